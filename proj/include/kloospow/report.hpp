#pragma once

/**
 * @file report.hpp
 * @brief Experiment reports: fixed-schema rows plus a reproducibility manifest.
 *
 * CSV follows RFC 4180 with the schema columns as header. JSON is a single
 * object {"meta": ..., "rows": [...]}. Both emit floating-point cells with
 * the same 17-significant-digit text, so the two formats carry identical
 * numeric values.
 */

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kloospow/modular_core.hpp"

namespace kloospow {

using Cell = std::variant<i64, u64, double, BigInt, std::string>;

struct Manifest {
    std::string tool = "kloospow";
    std::string version;
    std::string command;
    std::vector<std::string> args;
    std::optional<u64> seed;
    std::string timestamp;
    std::vector<std::pair<std::string, std::string>> parameters;
};

/// Known schema ids: kloost-oracle, kloost-average, divisor-scan,
/// root-count, korobov, valuation. Throws BadInput for anything else.
const std::vector<std::string>& schema_columns(std::string_view schema_id);

class ExperimentReport {
public:
    ExperimentReport(std::string schema_id, Manifest meta);

    const std::string& schema_id() const noexcept { return schema_id_; }
    const std::vector<std::string>& columns() const noexcept { return *columns_; }
    const Manifest& meta() const noexcept { return meta_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

    /// Throws BadInput when the row width differs from the schema.
    void add_row(std::vector<Cell> row);

    std::string to_csv() const;
    std::string to_json() const;
    std::string manifest_json() const;

private:
    std::string schema_id_;
    const std::vector<std::string>* columns_;
    Manifest meta_;
    std::vector<std::vector<Cell>> rows_;
};

/// printf "%.17g"; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);
std::string format_cell(const Cell& cell);

/// Parses the "meta" object of a JSON report, or a bare manifest object.
Manifest parse_manifest(std::string_view json_text);

} // namespace kloospow
