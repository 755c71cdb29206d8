// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance [--threads N] [--workdir DIR]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kloospow/averages.hpp"
#include "kloospow/cli.hpp"
#include "kloospow/divisor.hpp"
#include "kloospow/kloosterman.hpp"
#include "kloospow/verify.hpp"

using namespace kloospow;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and budgets.
constexpr double kFormulaTol = 1e-6;          // times sqrt(q)
constexpr double kVanishingTol = 1e-6;
constexpr double kAverageTol = 1e-4;          // times N
constexpr u64 kAverageQMax = 30'000;
constexpr double kBudgetFormula = 600.0;      // seconds
constexpr double kBudgetReduction = 120.0;
constexpr double kBudgetDivisor = 60.0;
constexpr double kBudgetTauTable = 600.0;
constexpr double kBudgetScan = 300.0;

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void report(int n, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %d: %s | %s\n", pass ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++failures;
    }
}

void note(const std::string& line) {
    std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string timed(double s) { return fmt("%.1fs", s); }

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli(const std::vector<std::string>& args, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (err_text != nullptr) {
        *err_text = err.str();
    }
    return code;
}

std::vector<PrimePowerModulus> grid(u64 q_max, unsigned k_min, unsigned k_max) {
    std::vector<PrimePowerModulus> out;
    for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        u64 q = 1;
        for (unsigned k = 1; k <= k_max; ++k) {
            q *= p;
            if (q > q_max) {
                break;
            }
            if (k >= k_min) {
                out.emplace_back(p, k);
            }
        }
    }
    return out;
}

void criteria_1_2(unsigned threads) {
    FormulaOptions o;
    o.tolerance = kFormulaTol;
    o.zero_tolerance = kVanishingTol;
    o.threads = threads;
    Stopwatch clock;
    const FormulaSweep s = formula_sweep(o);
    const double t = clock.seconds();
    report(1, s.explicit_formula.ok() && s.identity.ok() && t <= kBudgetFormula,
           "explicit formula vs brute force, q <= 5e4, tol 1e-6 sqrt(q)",
           std::to_string(s.moduli) + " moduli, " + timed(t) + " on " + std::to_string(threads) +
               " thread(s), budget " + timed(kBudgetFormula));
    note(s.explicit_formula.summary());
    note(s.identity.summary());

    // Ramanujan closed form at n = 0 and the p | n vanishing, both exact.
    SuiteResult ramanujan_zero;
    ramanujan_zero.name = "ramanujan";
    for (const PrimePowerModulus& modulus : grid(o.q_max, 2, 6)) {
        const u64 q = modulus.q_word();
        const u64 p = modulus.p_word();
        const KloostermanEvaluator ev(modulus);
        for (u64 a = 1; a < q; ++a) {
            if (a % p == 0) {
                continue;
            }
            const KloostermanValue v = ev.evaluate(0, static_cast<i64>(a));
            ramanujan_zero.check(ramanujan(static_cast<i64>(a), modulus) == 0.0 && v.value == 0.0 && v.exact_zero,
                                 [&] { return modulus.to_string() + " a=" + std::to_string(a); });
            const KloostermanValue w = ev.evaluate(static_cast<i64>(p * a), static_cast<i64>(a));
            ramanujan_zero.check(w.value == 0.0 && w.exact_zero,
                                 [&] { return modulus.to_string() + " p|n a=" + std::to_string(a); });
        }
    }
    report(2, s.vanishing.ok() && ramanujan_zero.ok(), "vanishing for p | n and n = 0, brute force within 1e-6",
           std::to_string(s.vanishing.checks + ramanujan_zero.checks) + " checks");
    note(s.vanishing.summary());
    note(ramanujan_zero.summary());
}

void criterion_3(unsigned threads) {
    ReductionOptions o;
    o.threads = threads;
    Stopwatch clock;
    const SuiteResult r = reduction_suite(o);
    const double t = clock.seconds();
    report(3, r.ok() && t <= kBudgetReduction, "reduction identity, 1000 contexts, t in [0, 1000], exact",
           timed(t) + ", budget " + timed(kBudgetReduction));
    note(r.summary());
}

void criterion_4() {
    const SuiteResult r = half_binomial_suite();
    report(4, r.ok(), "half-binomial g(i) vs exact C(1/2,i), i <= 60, p^k <= 1e9; recursion i <= 500",
           std::to_string(r.checks) + " checks");
    note(r.summary());
}

void criterion_5() {
    const SuiteResult r = valuation_suite();
    report(5, r.ok(), "valuation bound, p in {3,5,7}, 3 <= u <= i <= 200", std::to_string(r.checks) + " checks");
    note(r.summary());
}

void criterion_6(unsigned threads) {
    RootsOptions o;
    o.threads = threads;
    Stopwatch clock;
    const RootsSweep s = roots_sweep(o);
    report(6, s.counts.ok() && s.konyagin.ok() && s.polynomials >= 1000,
           "root counts lifting == enumeration, p^mu <= 1e6; rho <= d m^(1-1/d)",
           std::to_string(s.polynomials) + " polynomials, " + std::to_string(s.singular) + " singular, " +
               timed(clock.seconds()));
    note(s.counts.summary());
    note(s.konyagin.summary());
}

void criterion_7(unsigned threads) {
    HyperbolaOptions o;
    o.threads = threads;
    Stopwatch clock;
    const HyperbolaSweep s = hyperbola_sweep(o);
    const double t = clock.seconds();
    const ErrorTermResult e = error_term({20, PrimePowerModulus(3, 1), 1});
    report(7, s.sieve.ok() && s.partition.ok() && s.examples.ok() && e.E == -1.5 && t <= kBudgetDivisor,
           "divisor sums == sieve for X <= 1e5, partition identity, E(20;3,1) = -1.5",
           "E(20;3,1) = " + fmt("%.17g", e.E) + ", " + timed(t) + ", budget " + timed(kBudgetDivisor));
    note(s.sieve.summary());
    note(s.partition.summary());
    note(s.examples.summary());
}

// Trivial bound |sum| <= 2 N sqrt(q), checked on every average computed here.
SuiteResult trivial_bound{"trivial-bound"};

void check_trivial(const AverageQuery& q, double sum) {
    const double bound = 2.0 * static_cast<double>(q.N) * std::sqrt(q.modulus.q().get_d());
    trivial_bound.worst = std::max(trivial_bound.worst, std::fabs(sum) / bound);
    trivial_bound.check(std::fabs(sum) <= bound, [&] {
        return q.modulus.to_string() + " N=" + std::to_string(q.N) + " sum=" + fmt("%.17g", sum);
    });
}

void criterion_8(unsigned threads) {
    SuiteResult oracle{"average-oracle"};
    Stopwatch clock;
    u64 counter = 0;
    for (const PrimePowerModulus& modulus : grid(kAverageQMax, 2, 64)) {
        const u64 q = modulus.q_word();
        const u64 p = modulus.p_word();
        const BruteForceEvaluator brute(modulus);
        for (double lambda : {0.25, 0.5, 0.75, 1.0}) {
            const u64 N = std::max<u64>(1, static_cast<u64>(std::floor(std::pow(static_cast<double>(q), lambda) *
                                                                       (1 + 1e-15))));
            auto unit = [&] {
                u64 x = 1 + splitmix64(8, counter++) % (q - 1);
                return static_cast<i64>(x % p == 0 ? x + 1 : x);
            };
            const AverageQuery query{N, unit(), unit(), modulus, lambda};
            const double got = sum_kloosterman(query, threads).sum;
            long double want = 0;
            for (u64 n = 1; n <= N; ++n) {
                want += brute(query.m * static_cast<i64>(n), query.a).value;
            }
            const double err = std::fabs(got - static_cast<double>(want));
            oracle.worst = std::max(oracle.worst, err / static_cast<double>(N));
            oracle.check(err <= kAverageTol * static_cast<double>(N), [&] {
                return modulus.to_string() + " N=" + std::to_string(N) + " m=" + std::to_string(query.m) +
                       " a=" + std::to_string(query.a);
            });
            check_trivial(query, got);
        }
    }
    report(8, oracle.ok() && trivial_bound.ok(), "average sum vs brute-force double sum, q <= 3e4, tol 1e-4 N",
           timed(clock.seconds()));
    note(oracle.summary());
}

void criterion_9(unsigned threads) {
    Stopwatch clock;
    note("tau-hat table: p = 3, N = floor(q^0.4)");
    note(" k            q        N                    sum   tau_hat");
    bool complete = true;
    for (unsigned k = 10; k <= 24; ++k) {
        const PrimePowerModulus modulus(3, k);
        const double qd = modulus.q().get_d();
        const u64 N = static_cast<u64>(std::floor(std::pow(qd, 0.4) * (1 + 1e-15)));
        const AverageQuery query{N, 1, 1, modulus, 0.4};
        const AverageResult r = sum_kloosterman(query, threads);
        complete = complete && r.terms == N;
        check_trivial(query, r.sum);
        char line[160];
        std::snprintf(line, sizeof line, "%2u %12llu %8llu %22.15g %9.5f", k,
                      static_cast<unsigned long long>(modulus.q_word()), static_cast<unsigned long long>(N), r.sum,
                      empirical_tau(query, r.sum));
        note(line);
    }
    const double t_table = clock.seconds();

    Stopwatch scan_clock;
    const ScanResult scan = error_scan(10'000'000, PrimePowerModulus(3, 9), ResidueSelection::sample(200, 42),
                                       threads);
    const double t_scan = scan_clock.seconds();
    note("divisor scan: X = 1e7, q = 3^9, 200 residues (seed 42)");
    note("max|E| = " + fmt("%.17g", scan.max_abs_E) + ", max|E| q/X = " + fmt("%.17g", scan.max_normalized) +
         ", delta_hat = " + fmt("%.6f", scan.delta_hat));
    report(9, complete && scan.rows.size() == 200 && t_table <= kBudgetTauTable && t_scan <= kBudgetScan &&
                  trivial_bound.ok(),
           "trend reports produced (tau-hat table, divisor scan), report only",
           "table " + timed(t_table) + " (budget " + timed(kBudgetTauTable) + "), scan " + timed(t_scan) +
               " (budget " + timed(kBudgetScan) + ")");
    note(trivial_bound.summary());
}

void criterion_10(const fs::path& dir) {
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::vector<std::string>>> reports{
        {"average", {"average", "-p", "3", "-k", "10..24", "--lambda", "0.4"}},
        {"average_grid", {"average", "-p", "7", "-k", "2..5", "--N", "40", "-m", "3", "-a", "2"}},
        {"divisor_scan", {"divisor-scan", "--X", "1e7", "-p", "3", "-k", "9", "--sample", "200", "--seed", "42"}},
        {"divisor_units", {"divisor-scan", "--X", "10^5", "-p", "5", "-k", "3", "--all-units"}},
        {"roots", {"roots", "--coeffs", "-1,0,0,0,1", "-p", "5", "--mu", "1..8", "--Q", "1000"}},
        {"korobov", {"korobov", "--coeffs", "1,2,3,4,5,6", "-p", "3", "--mu", "8", "--P", "2000"}},
        {"valuation", {"valuation", "-p", "3,5,7", "--i-max", "60"}},
    };
    SuiteResult identical{"rerun-identity"};
    for (const auto& [name, args] : reports) {
        for (const std::string format : {"csv", "json"}) {
            const fs::path first = dir / (name + "." + format);
            std::vector<std::string> a = args;
            a.insert(a.end(), {"--format", format, "--threads", "1", "--out", first.string()});
            std::string err;
            if (cli(a, &err) != kExitOk) {
                identical.check(false, [&] { return name + " failed: " + err; });
                continue;
            }
            const fs::path manifest = format == "csv" ? fs::path(first.string() + ".manifest.json") : first;
            for (const std::string threads : {"2", "4", "7"}) {
                const fs::path again = dir / (name + ".rerun" + threads + "." + format);
                const int code = cli({"rerun", manifest.string(), "--threads", threads, "--out", again.string()}, &err);
                identical.check(code == kExitOk && slurp(first) == slurp(again) && !slurp(first).empty(),
                                [&] { return again.string() + " differs " + err; });
            }
        }
    }
    report(10, identical.ok(), "reports regenerated from manifests are byte-identical across thread counts",
           std::to_string(identical.checks) + " reruns in " + dir.string());
    note(identical.summary());
}

} // namespace

int main(int argc, char** argv) {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    fs::path dir = fs::temp_directory_path() / "kloospow_acceptance";
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--threads") {
            threads = static_cast<unsigned>(std::stoul(argv[i + 1]));
        } else if (flag == "--workdir") {
            dir = argv[i + 1];
        }
    }
    std::printf("acceptance: %u thread(s), workdir %s\n", threads, dir.string().c_str());
    Stopwatch total;
    try {
        criteria_1_2(threads);
        criterion_3(threads);
        criterion_4();
        criterion_5();
        criterion_6(threads);
        criterion_7(threads);
        criterion_8(threads);
        criterion_9(threads);
        criterion_10(dir);
    } catch (const std::exception& e) {
        std::printf("[FAIL] aborted: %s\n", e.what());
        return 1;
    }
    std::printf("acceptance: %d failure(s), %.1fs total\n", failures, total.seconds());
    return failures == 0 ? 0 : 1;
}
