#include "braggsim/output.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace braggsim {

using nlohmann::json;

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header.size())
        throw ValidationError("table row width does not match header");
    rows.push_back(std::move(row));
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw IoError("failed to format a double");
    return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
    double x = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("not a number: '" + s + "'");
    return x;
}

namespace {

std::string render(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    return std::get<std::string>(c);
}

Cell cell_from_text(const std::string& s) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return x;
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (size_t c = 0; c < table.header.size(); ++c) {
        if (c) out += ',';
        out += table.header[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += render(row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const Table& table, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path.string());
    f << to_csv(table);
    if (!f) throw IoError("write failed: " + path.string());
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path.string());
    Table t;
    std::string line;
    if (!std::getline(f, line)) throw ParseError("empty CSV: " + path.string());
    t.header = split_csv_line(line);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<Cell> row;
        for (const std::string& s : split_csv_line(line)) row.push_back(cell_from_text(s));
        t.add_row(std::move(row));
    }
    return t;
}

std::string to_json_text(const Table& table, const OutputMeta& meta) {
    json j = json::object();
    for (size_t c = 0; c < table.header.size(); ++c) {
        json col = json::array();
        for (const auto& row : table.rows) {
            if (std::holds_alternative<double>(row[c]))
                col.push_back(std::get<double>(row[c]));
            else
                col.push_back(std::get<std::string>(row[c]));
        }
        j[table.header[c]] = std::move(col);
    }
    j["_meta"] = {{"command", meta.command}, {"regime", meta.regime}};
    return j.dump(2) + "\n";
}

void write_json(const Table& table, const OutputMeta& meta,
                const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path.string());
    f << to_json_text(table, meta);
    if (!f) throw IoError("write failed: " + path.string());
}

Table read_json(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path.string());
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
    Table t;
    std::vector<const json*> cols;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "_meta") continue;
        t.header.push_back(it.key());
        cols.push_back(&it.value());
    }
    const size_t nrows = cols.empty() ? 0 : cols.front()->size();
    for (size_t r = 0; r < nrows; ++r) {
        std::vector<Cell> row;
        for (const json* col : cols) {
            const json& v = (*col)[r];
            if (v.is_null())
                row.emplace_back(std::nan(""));
            else if (v.is_number())
                row.emplace_back(v.get<double>());
            else
                row.emplace_back(v.get<std::string>());
        }
        t.add_row(std::move(row));
    }
    return t;
}

std::filesystem::path features_path(const std::filesystem::path& out) {
    std::filesystem::path p = out;
    const std::string ext = p.extension().string();
    p.replace_extension();
    p += ".features";
    p += ext.empty() ? ".csv" : ext;
    return p;
}

}  // namespace braggsim
