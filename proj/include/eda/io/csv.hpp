#ifndef EDA_IO_CSV_HPP
#define EDA_IO_CSV_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eda/types.hpp"

namespace eda::io {

/// Raw RFC-4180 table: header plus string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Parses quoted fields, doubled quotes and CRLF line ends. Rows whose
/// width differs from the header raise ParseError.
CsvTable parse_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

/// Numeric features with optional binary labels (1 = case, 0 = control).
struct FeatureTable {
    std::vector<std::string> names;
    Matrix values;
    std::optional<std::vector<int>> labels;

    Matrix case_rows() const;
    Matrix control_rows() const;
};

/// Converts every column except `label_column` to doubles. Errors name the
/// 1-based data row (header excluded) and the column.
FeatureTable to_feature_table(const CsvTable& csv,
                              const std::optional<std::string>& label_column);

/// Writes a header and 17-significant-digit values; the label column, when
/// present, is written last under `label_column`.
void write_feature_table(std::ostream& out, const FeatureTable& table,
                         std::string_view label_column = "label");

std::string format_double(double value);

/// Strict finite decimal parse; surrounding blanks are ignored.
std::optional<double> parse_double(std::string_view text);

/// Quotes a field when it contains a separator, quote or line break.
std::string csv_escape(std::string_view field);

} // namespace eda::io

#endif
