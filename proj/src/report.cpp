#include "kloospow/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

namespace kloospow {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::map<std::string, std::vector<std::string>, std::less<>>& schemas() {
    static const std::map<std::string, std::vector<std::string>, std::less<>> table = {
        {"kloost-oracle",
         {"p", "k", "q", "n", "a", "method", "value", "brute", "abs_diff", "tolerance", "ok"}},
        {"kloost-average",
         {"p", "k", "q", "N", "lambda_hat", "m", "a", "sum", "normalized", "tau_hat"}},
        {"divisor-scan",
         {"X", "p", "k", "q", "q_over_X23", "a_mode", "residues", "max_abs_E", "max_normalized",
          "delta_hat"}},
        {"root-count", {"p", "mu", "Q", "degree", "rho", "R", "konyagin_bound", "konyagin_ok"}},
        {"korobov",
         {"p", "mu", "P", "degree", "r", "beta", "u_lo", "u_hi", "R", "n_factor", "c", "lhs", "rhs",
          "rhs_holds", "trivial_ok", "hyp_degree", "hyp_mu", "hyp_r", "hyp_size"}},
        {"valuation", {"p", "i", "u", "exact", "bound", "ok"}},
    };
    return table;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string json_string(const std::string& text) {
    return nlohmann::json(text).dump();
}

std::string json_cell(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return json_string(*s);
    }
    if (const auto* d = std::get_if<double>(&cell); d && !std::isfinite(*d)) {
        return json_string(format_number(*d));
    }
    return format_cell(cell);
}

ordered_json manifest_object(const Manifest& meta, const std::string& schema_id) {
    ordered_json j;
    j["tool"] = meta.tool;
    j["version"] = meta.version;
    j["schema"] = schema_id;
    j["command"] = meta.command;
    j["args"] = meta.args;
    j["seed"] = meta.seed ? ordered_json(*meta.seed) : ordered_json(nullptr);
    j["timestamp"] = meta.timestamp;
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : meta.parameters) {
        params[key] = value;
    }
    j["parameters"] = params;
    return j;
}

} // namespace

const std::vector<std::string>& schema_columns(std::string_view schema_id) {
    const auto& table = schemas();
    auto it = table.find(schema_id);
    if (it == table.end()) {
        throw Error(ErrorCode::BadInput, "unknown report schema '" + std::string(schema_id) + "'");
    }
    return it->second;
}

ExperimentReport::ExperimentReport(std::string schema_id, Manifest meta)
    : schema_id_(std::move(schema_id)), columns_(&schema_columns(schema_id_)), meta_(std::move(meta)) {}

void ExperimentReport::add_row(std::vector<Cell> row) {
    if (row.size() != columns_->size()) {
        throw Error(ErrorCode::BadInput, "row has " + std::to_string(row.size()) +
                                             " cells, schema " + schema_id_ + " has " +
                                             std::to_string(columns_->size()));
    }
    rows_.push_back(std::move(row));
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else if constexpr (std::is_same_v<T, BigInt>) {
                return v.get_str();
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else {
                return std::to_string(v);
            }
        },
        cell);
}

std::string ExperimentReport::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns_->size(); ++c) {
        out += (c ? "," : "") + csv_field((*columns_)[c]);
    }
    out += "\r\n";
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += (c ? "," : "") + csv_field(format_cell(row[c]));
        }
        out += "\r\n";
    }
    return out;
}

std::string ExperimentReport::manifest_json() const {
    return manifest_object(meta_, schema_id_).dump(2) + "\n";
}

std::string ExperimentReport::to_json() const {
    std::ostringstream os;
    os << "{\n  \"meta\": ";
    std::string meta = manifest_object(meta_, schema_id_).dump(2);
    // indent the nested object by two spaces
    for (char c : meta) {
        os << c;
        if (c == '\n') {
            os << "  ";
        }
    }
    os << ",\n  \"rows\": [";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        os << (r ? ",\n    {" : "\n    {");
        for (std::size_t c = 0; c < columns_->size(); ++c) {
            os << (c ? ", " : "") << json_string((*columns_)[c]) << ": " << json_cell(rows_[r][c]);
        }
        os << "}";
    }
    os << (rows_.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

Manifest parse_manifest(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadInput, std::string("manifest is not valid JSON: ") + e.what());
    }
    if (j.contains("meta")) {
        j = j["meta"];
    }
    if (!j.is_object() || !j.contains("command") || !j.contains("args")) {
        throw Error(ErrorCode::BadInput, "manifest lacks command/args");
    }
    Manifest m;
    m.tool = j.value("tool", "kloospow");
    m.version = j.value("version", "");
    m.command = j["command"].get<std::string>();
    m.args = j["args"].get<std::vector<std::string>>();
    if (j.contains("seed") && !j["seed"].is_null()) {
        m.seed = j["seed"].get<u64>();
    }
    m.timestamp = j.value("timestamp", "");
    if (j.contains("parameters")) {
        for (const auto& [key, value] : j["parameters"].items()) {
            m.parameters.emplace_back(key, value.get<std::string>());
        }
    }
    return m;
}

} // namespace kloospow
