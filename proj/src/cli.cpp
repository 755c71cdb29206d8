#include "kloospow/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kloospow/averages.hpp"
#include "kloospow/divisor.hpp"
#include "kloospow/kloosterman.hpp"
#include "kloospow/report.hpp"
#include "kloospow/verify.hpp"

#ifndef KLOOSPOW_VERSION
#define KLOOSPOW_VERSION "0.0.0"
#endif

namespace kloospow {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Options that change where or how fast a report is produced, never its bytes.
bool is_volatile_option(const std::string& arg, bool& takes_value) {
    static const std::vector<std::string> names{"--threads", "--out", "--timestamp", "--manifest"};
    for (const auto& name : names) {
        if (arg == name) {
            takes_value = true;
            return true;
        }
        if (arg.rfind(name + "=", 0) == 0) {
            takes_value = false;
            return true;
        }
    }
    return false;
}

std::vector<std::string> recorded_args(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < args.size(); ++i) {
        bool takes_value = false;
        if (is_volatile_option(args[i], takes_value)) {
            i += takes_value ? 1 : 0;
            continue;
        }
        out.push_back(args[i]);
    }
    return out;
}

std::string iso_utc(std::time_t t) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string resolve_timestamp(const std::string& given) {
    if (!given.empty()) {
        return given;
    }
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
        char* end = nullptr;
        const long long epoch = std::strtoll(env, &end, 10);
        if (end && *end == '\0') {
            return iso_utc(static_cast<std::time_t>(epoch));
        }
    }
    return iso_utc(std::time(nullptr));
}

u64 parse_count(const std::string& text, const char* what) {
    // Accepts 10000000, 1e7 and 10^7.
    std::string t = text;
    try {
        if (auto caret = t.find('^'); caret != std::string::npos) {
            const u64 base = std::stoull(t.substr(0, caret));
            const u64 exp = std::stoull(t.substr(caret + 1));
            BigInt v;
            mpz_ui_pow_ui(v.get_mpz_t(), base, exp);
            if (!v.fits_ulong_p()) {
                throw UsageError(std::string(what) + " out of range: " + text);
            }
            return v.get_ui();
        }
        if (t.find_first_of("eE.") != std::string::npos) {
            const long double v = std::stold(t);
            if (v < 0 || v != std::floor(v) || v > 1.8e19L) {
                throw UsageError(std::string(what) + " must be a non-negative integer: " + text);
            }
            return static_cast<u64>(v);
        }
        std::size_t used = 0;
        const u64 v = std::stoull(t, &used);
        if (used != t.size() || t.front() == '-') {
            throw UsageError(std::string(what) + " must be a non-negative integer: " + text);
        }
        return v;
    } catch (const std::logic_error&) {
        throw UsageError(std::string(what) + " must be a non-negative integer: " + text);
    }
}

std::vector<u64> parse_count_list(const std::string& text, const char* what) {
    std::vector<u64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(parse_count(item, what));
        }
    }
    return out;
}

IntPolynomial parse_coeffs(const std::string& text) {
    std::vector<BigInt> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        BigInt c;
        if (item.empty() || c.set_str(item, 10) != 0) {
            throw UsageError("bad coefficient '" + item + "' (want comma-separated integers, constant first)");
        }
        coeffs.push_back(c);
    }
    if (coeffs.empty()) {
        throw UsageError("--coeffs is empty");
    }
    return IntPolynomial(std::move(coeffs));
}

BigInt ipow_big(u64 p, unsigned k) {
    BigInt v;
    mpz_ui_pow_ui(v.get_mpz_t(), p, k);
    return v;
}

struct Output {
    std::string format = "csv";
    std::string path;
    std::string manifest_path;
    std::string timestamp;
    unsigned threads = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", path, "write the report here instead of stdout");
        cmd->add_option("--manifest", manifest_path, "write the manifest JSON here");
        cmd->add_option("--timestamp", timestamp, "manifest timestamp (default SOURCE_DATE_EPOCH or now)");
        cmd->add_option("--threads", threads, "worker cap (default KLOOSPOW_THREADS or all cores)");
    }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + path);
    }
    f << text;
}

void emit(const ExperimentReport& report, const Output& o, std::ostream& out) {
    const std::string body = o.format == "json" ? report.to_json() : report.to_csv();
    if (o.path.empty()) {
        out << body;
    } else {
        write_file(o.path, body);
    }
    std::string manifest_path = o.manifest_path;
    if (manifest_path.empty() && o.format == "csv" && !o.path.empty()) {
        manifest_path = o.path + ".manifest.json";
    }
    if (!manifest_path.empty()) {
        write_file(manifest_path, report.manifest_json());
    }
}

Manifest make_manifest(const std::vector<std::string>& args, const Output& o) {
    Manifest m;
    m.version = KLOOSPOW_VERSION;
    m.command = args.front();
    m.args = recorded_args(args);
    m.timestamp = resolve_timestamp(o.timestamp);
    return m;
}

std::string eval_text(const KloostermanValue& v) {
    return (v.exact_zero ? std::string("0") : format_number(v.value)) + " (" +
           std::string(to_string(v.method)) + ")";
}

int exit_code_for(ErrorCode code) {
    return code == ErrorCode::TooLarge ? kExitTooLarge : kExitUsage;
}

int run_verify(const std::string& suite, bool quick, unsigned threads, std::ostream& out) {
    static const std::vector<std::string> known{"formula", "valuation", "reduction", "roots", "hyperbola", "all"};
    if (std::find(known.begin(), known.end(), suite) == known.end()) {
        throw UsageError("unknown suite '" + suite + "'");
    }
    const bool all = suite == "all";
    std::vector<SuiteResult> results;
    if (all || suite == "formula") {
        FormulaOptions o;
        o.threads = threads;
        if (quick) {
            o.q_max = 2'500;
            o.identity_exhaustive = 250;
            o.identity_samples = 200;
        }
        const FormulaSweep s = formula_sweep(o);
        results.insert(results.end(), {s.explicit_formula, s.vanishing, s.identity});
    }
    if (all || suite == "valuation") {
        HalfBinomialOptions h;
        ValuationOptions v;
        if (quick) {
            h.modulus_ceiling = 100'000;
            h.i_max_recursion = 120;
            v.i_max = 60;
        }
        results.push_back(half_binomial_suite(h));
        results.push_back(valuation_suite(v));
    }
    if (all || suite == "reduction") {
        ReductionOptions o;
        o.threads = threads;
        if (quick) {
            o.contexts = 50;
            o.t_max = 100;
        }
        results.push_back(reduction_suite(o));
    }
    if (all || suite == "roots") {
        RootsOptions o;
        o.threads = threads;
        if (quick) {
            o.polynomials = 60;
            o.modulus_ceiling = 20'000;
        }
        const RootsSweep s = roots_sweep(o);
        results.insert(results.end(), {s.counts, s.konyagin});
    }
    if (all || suite == "hyperbola") {
        HyperbolaOptions o;
        o.threads = threads;
        if (quick) {
            o.X_max = 5'000;
            o.staircase = 4;
        }
        const HyperbolaSweep s = hyperbola_sweep(o);
        results.insert(results.end(), {s.sieve, s.partition, s.examples});
    }
    bool ok = true;
    for (const auto& r : results) {
        out << r.summary() << "\n";
        ok = ok && r.ok();
    }
    out << "verify " << suite << ": " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? kExitOk : kExitVerifyFailed;
}

} // namespace

std::vector<std::uint64_t> parse_int_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        if (auto dots = item.find(".."); dots != std::string::npos) {
            const u64 lo = parse_count(item.substr(0, dots), "range start");
            const u64 hi = parse_count(item.substr(dots + 2), "range end");
            if (hi < lo) {
                throw UsageError("empty range '" + item + "'");
            }
            for (u64 v = lo; v <= hi; ++v) {
                out.push_back(v);
            }
        } else {
            out.push_back(parse_count(item, "list entry"));
        }
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kloosterman sums, divisor sums in progressions and p-adic root counting", "kloospow"};
    app.set_version_flag("--version", KLOOSPOW_VERSION);
    app.require_subcommand(1);

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate S(n, a; p^k)");
    i64 n = 0;
    i64 a = 1;
    u64 p = 3;
    unsigned k = 2;
    std::string method = "auto";
    eval->add_option("-n", n, "first argument")->required();
    eval->add_option("-a", a, "second argument, a unit mod p");
    eval->add_option("-p", p, "odd prime");
    eval->add_option("-k", k, "exponent");
    eval->add_option("--method", method, "auto, brute or formula")
        ->check(CLI::IsMember({"auto", "brute", "formula"}));

    // average
    auto* average = app.add_subcommand("average", "sum_{n <= N} S(mn, a; p^k) over a grid of k");
    Output avg_out;
    avg_out.attach(average);
    std::string k_list = "";
    std::string N_text;
    std::optional<double> lambda;
    i64 m = 1;
    average->add_option("-p", p, "odd prime");
    average->add_option("-k", k_list, "exponents: 10..24, 2,3,5 or empty");
    auto* N_opt = average->add_option("--N", N_text, "summation length");
    auto* lambda_opt = average->add_option("--lambda", lambda, "N = floor(q^lambda)");
    N_opt->excludes(lambda_opt);
    average->add_option("-m", m, "multiplier, a unit mod p");
    average->add_option("-a", a, "second argument, a unit mod p");

    // divisor-scan
    auto* scan = app.add_subcommand("divisor-scan", "max |E(X; p^k, a)| over residues a");
    Output scan_out;
    scan_out.attach(scan);
    std::string X_list = "100000";
    std::string scan_k = "1..4";
    std::string residues;
    bool all_units = false;
    std::optional<u64> sample;
    u64 seed = 0;
    scan->add_option("--X", X_list, "bounds: 1e5,1e7");
    scan->add_option("-p", p, "odd prime");
    scan->add_option("-k", scan_k, "exponents");
    auto* a_opt = scan->add_option("--a", residues, "explicit residues, comma separated");
    auto* all_opt = scan->add_flag("--all-units", all_units, "every unit (default)");
    auto* sample_opt = scan->add_option("--sample", sample, "sample this many units");
    scan->add_option("--seed", seed, "sampling seed");
    a_opt->excludes(all_opt)->excludes(sample_opt);
    all_opt->excludes(sample_opt);

    // roots
    auto* roots = app.add_subcommand("roots", "count roots of f mod p^mu");
    Output roots_out;
    roots_out.attach(roots);
    std::string coeffs;
    std::string mu_list = "1..3";
    std::string Q_text;
    roots->add_option("--coeffs", coeffs, "coefficients, constant term first")->required();
    roots->add_option("-p", p, "prime");
    roots->add_option("--mu", mu_list, "exponents");
    roots->add_option("--Q", Q_text, "count x in [1, Q] (default p^mu)");

    // korobov
    auto* korobov = app.add_subcommand("korobov", "exponential sum against the Korobov-type bound");
    Output kor_out;
    kor_out.attach(korobov);
    std::string P_text = "1000";
    double c = kKorobovDefaultC;
    korobov->add_option("--coeffs", coeffs, "coefficients, constant term first")->required();
    korobov->add_option("-p", p, "prime");
    korobov->add_option("--mu", mu_list, "exponents");
    korobov->add_option("--P", P_text, "sum length");
    korobov->add_option("--c", c, "constant in P^(1 - c/r^2)");

    // valuation
    auto* valuation = app.add_subcommand("valuation", "exact valuations against the logarithmic bound");
    Output val_out;
    val_out.attach(valuation);
    std::string primes = "3,5,7";
    u64 i_max = 200;
    valuation->add_option("-p", primes, "primes");
    valuation->add_option("--i-max", i_max, "largest index");

    // verify
    auto* verify = app.add_subcommand("verify", "run invariant suites");
    std::string suite = "all";
    bool quick = false;
    unsigned verify_threads = 0;
    verify->add_option("suite", suite, "formula, valuation, reduction, roots, hyperbola or all");
    verify->add_flag("--quick", quick, "reduced sweep sizes");
    verify->add_option("--threads", verify_threads, "worker cap");

    // rerun
    auto* rerun = app.add_subcommand("rerun", "regenerate a report from its manifest");
    std::string manifest_file;
    std::string rerun_out;
    std::string rerun_threads;
    rerun->add_option("manifest", manifest_file, "manifest JSON or JSON report")->required();
    rerun->add_option("--out", rerun_out, "write the report here");
    rerun->add_option("--threads", rerun_threads, "worker cap");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*eval) {
            const PrimePowerModulus modulus(p, k);
            const KloostermanEvaluator evaluator(modulus);
            const u64 q = modulus.q_word();
            KloostermanValue v;
            if (method == "brute") {
                v = BruteForceEvaluator(modulus)(n, a);
            } else if (method == "formula") {
                v = evaluator.explicit_formula(n, a);
            } else {
                v = evaluator.evaluate(n, a);
            }
            out << eval_text(v) << "\n";
            if (method == "auto" && q <= 100'000) {
                if (v.method == Method::BruteForce) {
                    out << "cross-check: none (k = 1 has no closed form)\n";
                } else {
                    const KloostermanValue b = BruteForceEvaluator(modulus)(n, a);
                    out << "cross-check: " << format_number(b.value) << " (BruteForce) |diff| = "
                        << format_number(std::fabs(b.value - v.value)) << "\n";
                }
            }
            return kExitOk;
        }

        if (*average) {
            if (N_text.empty() && !lambda) {
                throw UsageError("give --N or --lambda");
            }
            Manifest meta = make_manifest(args, avg_out);
            meta.parameters = {{"p", std::to_string(p)}, {"m", std::to_string(m)}, {"a", std::to_string(a)}};
            if (lambda) {
                meta.parameters.emplace_back("lambda", format_number(*lambda));
            }
            ExperimentReport report("kloost-average", meta);
            for (u64 kk : parse_int_list(k_list)) {
                const PrimePowerModulus modulus(p, static_cast<unsigned>(kk));
                const u64 q = modulus.q_word();
                u64 N = 0;
                if (lambda) {
                    const long double target = std::pow(static_cast<long double>(q), static_cast<long double>(*lambda));
                    // Exact powers such as 3^(10 * 0.4) must not round down.
                    N = static_cast<u64>(std::floor(target * (1.0L + 1e-15L)));
                } else {
                    N = parse_count(N_text, "--N");
                }
                AverageQuery query{N, m, a, modulus, lambda.value_or(0.0)};
                const AverageResult r = sum_kloosterman(query, avg_out.threads);
                const double lambda_hat = std::log(static_cast<double>(N)) / std::log(static_cast<double>(q));
                const double normalized = r.sum / (static_cast<double>(N) * std::sqrt(static_cast<double>(q)));
                report.add_row({p, kk, q, N, lambda_hat, m, a, r.sum, normalized, empirical_tau(query, r.sum)});
            }
            emit(report, avg_out, out);
            return kExitOk;
        }

        if (*scan) {
            ResidueSelection selection = ResidueSelection::all_units();
            Manifest meta = make_manifest(args, scan_out);
            if (!residues.empty()) {
                selection = ResidueSelection::explicit_list(parse_count_list(residues, "--a"));
            } else if (sample) {
                selection = ResidueSelection::sample(*sample, seed);
                meta.seed = seed;
            }
            meta.parameters = {{"p", std::to_string(p)}, {"a_mode", selection.describe()}};
            ExperimentReport report("divisor-scan", meta);
            const std::vector<u64> Xs = parse_count_list(X_list, "--X");
            for (u64 X : Xs) {
                if (X < 2) {
                    throw UsageError("--X must be at least 2");
                }
                for (u64 kk : parse_int_list(scan_k)) {
                    const PrimePowerModulus modulus(p, static_cast<unsigned>(kk));
                    const ScanResult r = error_scan(X, modulus, selection, scan_out.threads);
                    const double ratio = static_cast<double>(r.q) / std::pow(static_cast<double>(X), 2.0 / 3.0);
                    report.add_row({X, p, kk, r.q, ratio, r.mode, u64{r.rows.size()}, r.max_abs_E,
                                    r.max_normalized, r.delta_hat});
                }
            }
            emit(report, scan_out, out);
            return kExitOk;
        }

        if (*roots) {
            const IntPolynomial f = parse_coeffs(coeffs);
            Manifest meta = make_manifest(args, roots_out);
            meta.parameters = {{"p", std::to_string(p)}, {"f", f.to_string()}};
            ExperimentReport report("root-count", meta);
            const std::size_t d = f.degree();
            for (u64 mu : parse_int_list(mu_list)) {
                const BigInt pm = ipow_big(p, static_cast<unsigned>(mu));
                const BigInt Q = Q_text.empty() ? pm : BigInt(parse_count(Q_text, "--Q"));
                const BigInt rho = count_roots_full(f, pm);
                const BigInt R = count_roots_ranged(PolyCongruenceQuery{f, BigInt(p), static_cast<unsigned>(mu), Q});
                const double dd = static_cast<double>(d);
                const double bound = d == 0 ? 0.0 : dd * std::pow(pm.get_d(), 1.0 - 1.0 / dd);
                const bool ok = d > 0 && rho.get_d() <= bound * (1.0 + 1e-12);
                report.add_row({p, mu, Q, u64{d}, rho, R, bound, u64{ok ? 1u : 0u}});
            }
            emit(report, roots_out, out);
            return kExitOk;
        }

        if (*korobov) {
            const IntPolynomial f = parse_coeffs(coeffs);
            const u64 P = parse_count(P_text, "--P");
            Manifest meta = make_manifest(args, kor_out);
            meta.parameters = {{"p", std::to_string(p)}, {"f", f.to_string()}, {"c", format_number(c)}};
            ExperimentReport report("korobov", meta);
            for (u64 mu : parse_int_list(mu_list)) {
                const KorobovRow r = korobov_report(f, BigInt(p), static_cast<unsigned>(mu), P, c, kor_out.threads);
                auto flag = [](bool b) { return u64{b ? 1u : 0u}; };
                report.add_row({r.p, u64{r.mu}, r.P, u64{r.degree}, r.r, u64{r.beta}, r.u_lo, r.u_hi, r.R,
                                r.n_factor, r.c, r.lhs, r.rhs, flag(r.rhs_holds), flag(r.trivial_ok),
                                flag(r.hyp_degree), flag(r.hyp_mu), flag(r.hyp_r), flag(r.hyp_size)});
            }
            emit(report, kor_out, out);
            return kExitOk;
        }

        if (*valuation) {
            Manifest meta = make_manifest(args, val_out);
            ExperimentReport report("valuation", meta);
            for (u64 pp : parse_count_list(primes, "-p")) {
                for (u64 i = 3; i <= i_max; ++i) {
                    for (u64 u = 3; u <= i; ++u) {
                        const ValuationBound vb = valuation_bound_check(i, u, pp);
                        report.add_row({pp, i, u, vb.exact, vb.bound, u64{vb.ok ? 1u : 0u}});
                    }
                }
            }
            emit(report, val_out, out);
            return kExitOk;
        }

        if (*verify) {
            return run_verify(suite, quick, verify_threads, out);
        }

        if (*rerun) {
            std::ifstream f(manifest_file, std::ios::binary);
            if (!f) {
                throw UsageError("cannot read " + manifest_file);
            }
            std::stringstream text;
            text << f.rdbuf();
            const Manifest meta = parse_manifest(text.str());
            if (meta.command == "rerun" || meta.command == "verify") {
                throw UsageError("manifest command '" + meta.command + "' cannot be rerun");
            }
            std::vector<std::string> replay{meta.command};
            replay.insert(replay.end(), meta.args.begin(), meta.args.end());
            replay.insert(replay.end(), {"--timestamp", meta.timestamp});
            if (!rerun_out.empty()) {
                replay.insert(replay.end(), {"--out", rerun_out});
            }
            if (!rerun_threads.empty()) {
                replay.insert(replay.end(), {"--threads", rerun_threads});
            }
            return run_cli(replay, out, err);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace kloospow
