#include <gtest/gtest.h>

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "kloospow/cli.hpp"
#include "kloospow/report.hpp"

using namespace kloospow;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::BadInput;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "kloospow_tests";
    fs::create_directories(dir);
    return dir / name;
}

Manifest sample_manifest() {
    Manifest m;
    m.version = "0.1.0";
    m.command = "roots";
    m.args = {"--coeffs", "-1,0,1"};
    m.timestamp = "2024-01-01T00:00:00Z";
    m.parameters = {{"p", "3"}};
    return m;
}

} // namespace

TEST(Report, FormatNumber) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(-1.5), "-1.5");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Report, RowWidthAndUnknownSchema) {
    ExperimentReport r("valuation", sample_manifest());
    EXPECT_EQ(code_of([&] { r.add_row({Cell{u64{1}}}); }), ErrorCode::BadInput);
    EXPECT_EQ(code_of([] { schema_columns("no-such-schema"); }), ErrorCode::BadInput);
    EXPECT_EQ(schema_columns("root-count").front(), "p");
}

TEST(Report, CsvQuotingAndLineEndings) {
    ExperimentReport r("root-count", sample_manifest());
    std::vector<Cell> row;
    for (std::size_t i = 0; i < r.columns().size(); ++i) {
        row.emplace_back(u64{i});
    }
    row[0] = std::string("a,\"b\"");
    row[1] = std::numeric_limits<double>::infinity();
    r.add_row(row);
    const std::string csv = r.to_csv();
    EXPECT_EQ(csv.rfind("p,mu,Q,", 0), 0u);
    EXPECT_NE(csv.find("\r\n\"a,\"\"b\"\"\",inf,2,"), std::string::npos);
    EXPECT_EQ(csv.substr(csv.size() - 2), "\r\n");
}

TEST(Report, JsonParsesAndRoundTripsManifest) {
    ExperimentReport r("valuation", sample_manifest());
    std::vector<Cell> row;
    for (std::size_t i = 0; i < r.columns().size(); ++i) {
        row.emplace_back(i % 2 == 0 ? Cell{0.25 * static_cast<double>(i)} : Cell{BigInt("123456789012345678901234567890")});
    }
    row[0] = std::numeric_limits<double>::infinity();
    r.add_row(row);
    const auto j = nlohmann::json::parse(r.to_json());
    EXPECT_EQ(j["meta"]["schema"], "valuation");
    EXPECT_EQ(j["meta"]["tool"], "kloospow");
    ASSERT_EQ(j["rows"].size(), 1u);
    EXPECT_EQ(j["rows"][0][r.columns()[0]], "inf");
    EXPECT_EQ(j["rows"][0][r.columns()[2]].get<double>(), 0.5);

    const Manifest back = parse_manifest(r.to_json());
    EXPECT_EQ(back.command, "roots");
    EXPECT_EQ(back.args, sample_manifest().args);
    EXPECT_EQ(back.timestamp, "2024-01-01T00:00:00Z");
    EXPECT_FALSE(back.seed.has_value());
    const Manifest bare = parse_manifest(r.manifest_json());
    EXPECT_EQ(bare.args, back.args);
    EXPECT_EQ(code_of([] { parse_manifest("{not json"); }), ErrorCode::BadInput);
}

TEST(Report, CsvAndJsonCarryTheSameValues) {
    const CliRun csv = cli({"average", "-p", "3", "-k", "3..6", "--lambda", "0.5", "--format", "csv",
                            "--timestamp", "T"});
    const CliRun json = cli({"average", "-p", "3", "-k", "3..6", "--lambda", "0.5", "--format", "json",
                             "--timestamp", "T"});
    ASSERT_EQ(csv.code, 0);
    ASSERT_EQ(json.code, 0);
    const auto j = nlohmann::json::parse(json.out);
    std::istringstream lines(csv.out);
    std::string header, line;
    std::getline(lines, header);
    std::vector<std::string> columns;
    {
        std::stringstream hs(header.substr(0, header.size() - 1));
        for (std::string c; std::getline(hs, c, ',');) columns.push_back(c);
    }
    std::size_t i = 0;
    while (std::getline(lines, line)) {
        std::stringstream ls(line.substr(0, line.size() - 1));
        std::size_t c = 0;
        for (std::string cell; std::getline(ls, cell, ','); ++c) {
            const auto& v = j["rows"][i][columns[c]];
            if (v.is_number_float()) {
                EXPECT_EQ(std::stod(cell), v.get<double>()) << columns[c];
            } else {
                EXPECT_EQ(cell, v.is_string() ? v.get<std::string>() : v.dump()) << columns[c];
            }
        }
        ++i;
    }
    EXPECT_EQ(i, 4u);
    EXPECT_EQ(j["rows"].size(), 4u);
}

TEST(Cli, ParseIntList) {
    EXPECT_EQ(parse_int_list("3..6"), (std::vector<std::uint64_t>{3, 4, 5, 6}));
    EXPECT_EQ(parse_int_list("2,4,9"), (std::vector<std::uint64_t>{2, 4, 9}));
    EXPECT_EQ(parse_int_list("2..4,7"), (std::vector<std::uint64_t>{2, 3, 4, 7}));
    EXPECT_TRUE(parse_int_list("").empty());
}

TEST(Cli, EvalOutputsAndExitCodes) {
    const CliRun ok = cli({"eval", "-n", "1", "-a", "1", "-p", "3", "-k", "2"});
    EXPECT_EQ(ok.code, kExitOk);
    EXPECT_EQ(ok.out.rfind("1.04188906600158", 0), 0u);
    EXPECT_NE(ok.out.find("(ExplicitFormula)"), std::string::npos);
    EXPECT_NE(ok.out.find("cross-check"), std::string::npos);

    const CliRun zero = cli({"eval", "-n", "3", "-a", "1", "-p", "3", "-k", "2"});
    EXPECT_EQ(zero.out.rfind("0 (VanishingRule)", 0), 0u);

    EXPECT_EQ(cli({"eval", "-n", "1", "-a", "3", "-p", "3", "-k", "2"}).code, kExitUsage);
    EXPECT_EQ(cli({"eval", "-n", "1", "-a", "1", "-p", "3", "-k", "20", "--method", "brute"}).code, kExitTooLarge);
    EXPECT_EQ(cli({"eval", "-n", "1", "-a", "1", "-p", "9", "-k", "2"}).code, kExitUsage);
    EXPECT_EQ(cli({"no-such-command"}).code, kExitUsage);
    EXPECT_EQ(cli({}).code, kExitUsage);
}

TEST(Cli, EmptyGridAndDivisorErrors) {
    const CliRun empty = cli({"average", "-p", "3", "-k", "", "--lambda", "0.5", "--format", "json"});
    EXPECT_EQ(empty.code, kExitOk);
    EXPECT_TRUE(nlohmann::json::parse(empty.out)["rows"].empty());

    const CliRun gcd = cli({"divisor-scan", "--X", "1000", "-p", "3", "-k", "2", "--a", "3"});
    EXPECT_EQ(gcd.code, kExitUsage);
    EXPECT_NE(gcd.err.find("NotCoprime"), std::string::npos);

    const CliRun big = cli({"divisor-scan", "--X", "10^3", "-p", "3", "-k", "14", "--all-units"});
    EXPECT_EQ(big.code, kExitTooLarge);
}

TEST(Cli, RerunIsByteIdentical) {
    const fs::path first = scratch("scan.csv");
    const fs::path second = scratch("scan_rerun.csv");
    const CliRun made = cli({"divisor-scan", "--X", "1e6", "-p", "3", "-k", "6", "--sample", "40", "--seed", "9",
                             "--threads", "1", "--out", first.string()});
    ASSERT_EQ(made.code, kExitOk) << made.err;
    const fs::path manifest = first.string() + ".manifest.json";
    ASSERT_TRUE(fs::exists(manifest));
    const CliRun again = cli({"rerun", manifest.string(), "--threads", "4", "--out", second.string()});
    ASSERT_EQ(again.code, kExitOk) << again.err;
    EXPECT_EQ(slurp(first), slurp(second));
    EXPECT_FALSE(slurp(first).empty());

    const fs::path json_first = scratch("roots.json");
    const fs::path json_second = scratch("roots_rerun.json");
    ASSERT_EQ(cli({"roots", "--coeffs", "-1,0,1", "-p", "3", "--mu", "1..6", "--Q", "100", "--format", "json",
                   "--out", json_first.string()}).code,
              kExitOk);
    ASSERT_EQ(cli({"rerun", json_first.string(), "--out", json_second.string()}).code, kExitOk);
    EXPECT_EQ(slurp(json_first), slurp(json_second));
}

TEST(Cli, TimestampFromEnvironment) {
    ::setenv("SOURCE_DATE_EPOCH", "0", 1);
    const CliRun r = cli({"valuation", "-p", "3", "--i-max", "3", "--format", "json"});
    ::unsetenv("SOURCE_DATE_EPOCH");
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["meta"]["timestamp"], "1970-01-01T00:00:00Z");
}

TEST(Cli, QuickVerifyPasses) {
    const CliRun r = cli({"verify", "all", "--quick"});
    EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
    EXPECT_NE(r.out.find("suite="), std::string::npos);
}
