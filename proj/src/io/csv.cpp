#include "eda/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

#include "eda/error.hpp"

namespace eda::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

Matrix gather_rows(const FeatureTable& table, int label) {
    if (!table.labels) {
        throw Error(ErrorKind::MissingLabel, "table has no label column");
    }
    const auto& labels = *table.labels;
    Eigen::Index count = 0;
    for (int l : labels) count += (l == label);
    Matrix out(count, table.values.cols());
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) out.row(r++) = table.values.row(static_cast<Eigen::Index>(i));
    }
    return out;
}

} // namespace

CsvTable parse_csv(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        // Blank lines are skipped.
        if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (field_started && !trim(field).empty()) {
                throw Error(ErrorKind::ParseError,
                            "line=" + std::to_string(line) + " stray quote inside a field");
            }
            field.clear();
            in_quotes = true;
            field_started = true;
            break;
        case ',':
            end_field();
            break;
        case '\r':
            break;
        case '\n':
            end_record();
            ++line;
            break;
        default:
            field.push_back(c);
            field_started = true;
        }
    }
    if (in_quotes) {
        throw Error(ErrorKind::ParseError, "line=" + std::to_string(line) + " unterminated quote");
    }
    if (field_started || !field.empty() || !record.empty()) end_record();

    if (records.empty()) throw Error(ErrorKind::ParseError, "empty CSV: header row required");
    CsvTable table;
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw Error(ErrorKind::ParseError,
                        "row=" + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                            " fields, header has " + std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return parse_csv(in);
}

Matrix FeatureTable::case_rows() const { return gather_rows(*this, 1); }
Matrix FeatureTable::control_rows() const { return gather_rows(*this, 0); }

FeatureTable to_feature_table(const CsvTable& csv,
                              const std::optional<std::string>& label_column) {
    std::optional<std::size_t> label_index;
    if (label_column) {
        for (std::size_t c = 0; c < csv.header.size(); ++c) {
            if (csv.header[c] == *label_column) label_index = c;
        }
        if (!label_index) {
            throw Error(ErrorKind::MissingLabel,
                        "column=" + *label_column + " label column not found in header");
        }
    }

    FeatureTable table;
    std::vector<std::size_t> feature_cols;
    for (std::size_t c = 0; c < csv.header.size(); ++c) {
        if (label_index && c == *label_index) continue;
        for (const auto& seen : table.names) {
            if (seen == csv.header[c]) {
                throw Error(ErrorKind::ParseError, "column=" + csv.header[c] + " duplicated in header");
            }
        }
        table.names.push_back(csv.header[c]);
        feature_cols.push_back(c);
    }

    table.values.resize(static_cast<Eigen::Index>(csv.rows.size()),
                        static_cast<Eigen::Index>(feature_cols.size()));
    if (label_index) table.labels.emplace();
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        for (std::size_t f = 0; f < feature_cols.size(); ++f) {
            const std::string& cell = row[feature_cols[f]];
            const auto value = parse_double(cell);
            if (!value) {
                throw Error(ErrorKind::ParseError,
                            "row=" + std::to_string(r + 1) + " column=" + table.names[f] +
                                " cannot parse '" + cell + "' as a finite number");
            }
            table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) = *value;
        }
        if (label_index) {
            const std::string_view cell = trim(row[*label_index]);
            if (cell != "0" && cell != "1") {
                throw Error(ErrorKind::ParseError,
                            "row=" + std::to_string(r + 1) + " column=" + *label_column +
                                " label must be 0 or 1, got '" + std::string(cell) + "'");
            }
            table.labels->push_back(cell == "1" ? 1 : 0);
        }
    }
    return table;
}

void write_feature_table(std::ostream& out, const FeatureTable& table,
                         std::string_view label_column) {
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        if (c) out << ',';
        out << csv_escape(table.names[c]);
    }
    if (table.labels) out << (table.names.empty() ? "" : ",") << csv_escape(label_column);
    out << '\n';
    for (Eigen::Index r = 0; r < table.values.rows(); ++r) {
        for (Eigen::Index c = 0; c < table.values.cols(); ++c) {
            if (c) out << ',';
            out << format_double(table.values(r, c));
        }
        if (table.labels) {
            out << (table.values.cols() ? "," : "") << (*table.labels)[static_cast<std::size_t>(r)];
        }
        out << '\n';
    }
}

std::string format_double(double value) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::optional<double> parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace eda::io
