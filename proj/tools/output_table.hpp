#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

namespace survest::cli {

enum class TableFormat { Human, Csv, Tsv };

using Cell = std::variant<std::string, double, long long, bool>;

// Rectangular result table. Human format renders reals with 6 significant
// digits; csv/tsv keep full round-trip precision.
struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> r) { rows.push_back(std::move(r)); }

    static std::string format_cell(const Cell& c, TableFormat fmt) {
        char buf[64];
        if (const auto* s = std::get_if<std::string>(&c)) return *s;
        if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
        if (const auto* i = std::get_if<long long>(&c)) {
            std::snprintf(buf, sizeof buf, "%lld", *i);
            return buf;
        }
        const double v = std::get<double>(c);
        std::snprintf(buf, sizeof buf, fmt == TableFormat::Human ? "%.6g" : "%.17g", v);
        return buf;
    }

    std::string render(TableFormat fmt) const {
        std::string out;
        if (fmt != TableFormat::Human) {
            const char sep = fmt == TableFormat::Csv ? ',' : '\t';
            for (std::size_t i = 0; i < columns.size(); ++i) {
                if (i) out += sep;
                out += columns[i];
            }
            out += '\n';
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) out += sep;
                    out += format_cell(row[i], fmt);
                }
                out += '\n';
            }
            return out;
        }

        std::vector<std::size_t> width(columns.size());
        std::vector<std::vector<std::string>> cells;
        for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
        for (const auto& row : rows) {
            std::vector<std::string> r;
            for (std::size_t i = 0; i < row.size(); ++i) {
                r.push_back(format_cell(row[i], fmt));
                width[i] = std::max(width[i], r.back().size());
            }
            cells.push_back(std::move(r));
        }
        const auto pad = [&](const std::string& s, std::size_t w) {
            std::string p = s;
            p.resize(w, ' ');
            return p;
        };
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += "  ";
            out += pad(columns[i], width[i]);
        }
        out += '\n';
        for (const auto& r : cells) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) out += "  ";
                out += pad(r[i], width[i]);
            }
            while (!out.empty() && out.back() == ' ') out.pop_back();
            out += '\n';
        }
        return out;
    }
};

}  // namespace survest::cli
