#include "nhsense/table.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nhsense {

void ResultTable::validate() const {
    for (const auto& row : rows)
        if (row.size() != columns.size())
            throw std::invalid_argument("result table: ragged rows");
}

int ResultTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

const std::string* ResultTable::metadata_value(const std::string& key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return &v;
    return nullptr;
}

bool ResultTable::equals(const ResultTable& other) const {
    if (columns != other.columns || metadata != other.metadata ||
        rows.size() != other.rows.size())
        return false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != other.rows[r].size()) return false;
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            const double a = rows[r][c], b = other.rows[r][c];
            if (std::isnan(a) && std::isnan(b)) continue;
            if (a != b) return false;
        }
    }
    return true;
}

namespace {

std::string format_cell(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string to_csv(const ResultTable& table) {
    table.validate();
    std::ostringstream os;
    for (const auto& [k, v] : table.metadata) os << "# " << k << " = " << v << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << format_cell(row[i]) << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
    return os.str();
}

void emit_csv(const ResultTable& table, const std::string& path) {
    atomic_write_file(path, to_csv(table));
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

ResultTable parse_csv(const std::string& text) {
    ResultTable table;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            const auto eq = body.find(" = ");
            if (eq == std::string::npos)
                throw std::invalid_argument("csv: malformed metadata line: " + line);
            std::string key = body.substr(0, eq);
            if (!key.empty() && key.front() == ' ') key.erase(key.begin());
            table.metadata.emplace_back(key, body.substr(eq + 3));
            continue;
        }
        if (!header_seen) {
            table.columns = split_fields(line);
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != table.columns.size())
            throw std::invalid_argument("csv: row width mismatch: " + line);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            try {
                row.push_back(std::stod(f));
            } catch (...) {
                throw std::invalid_argument("csv: bad numeric field: " + f);
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (!header_seen) throw std::invalid_argument("csv: missing header row");
    return table;
}

ResultTable parse_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename to " + path + " failed: " + std::strerror(errno));
    }
}

}  // namespace nhsense
