#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nhsense {

/// Rectangular numeric result table plus the metadata needed to re-run the
/// producing experiment bit-identically (config echo, version, seed).
/// Cells may be NaN (e.g. the susceptibility column has no entry for the
/// last grid point); NaN cells compare equal in equals().
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;  // ordered key/value

    void validate() const;
    int column_index(const std::string& name) const;  // -1 when absent
    const std::string* metadata_value(const std::string& key) const;
    bool equals(const ResultTable& other) const;
};

/// RFC-4180-style CSV: '#'-prefixed "key = value" metadata lines, a header
/// row, then rows rendered with 12 significant digits, LF line endings.
std::string to_csv(const ResultTable& table);
void emit_csv(const ResultTable& table, const std::string& path);

ResultTable parse_csv(const std::string& text);
ResultTable parse_csv_file(const std::string& path);

/// Writes via a temp file in the same directory plus rename, so a crash
/// never leaves a half-written output.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace nhsense
