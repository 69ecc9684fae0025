// output.hpp — tabular results and their CSV/JSON serialization.
//
// Floating-point cells are rendered with the shortest decimal that
// round-trips, so parse(write(x)) reproduces x exactly and identical inputs
// produce byte-identical files.

#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "braggsim/errors.hpp"

namespace braggsim {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

struct OutputMeta {
    std::string command;
    std::string regime;  // "bragg" or "general"
};

std::string format_double(double x);          // shortest round-trip decimal
double parse_double(const std::string& s);    // throws ParseError

std::string to_csv(const Table& table);
void write_csv(const Table& table, const std::filesystem::path& path);
Table read_csv(const std::filesystem::path& path);

// columns mirrored as arrays keyed by column name, plus a "_meta" object
std::string to_json_text(const Table& table, const OutputMeta& meta);
void write_json(const Table& table, const OutputMeta& meta,
                const std::filesystem::path& path);
Table read_json(const std::filesystem::path& path);

// sibling path carrying detected features: out.csv -> out.features.csv
std::filesystem::path features_path(const std::filesystem::path& out);

}  // namespace braggsim
