// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "trendlet/error.hpp"
#include "trendlet/matrix.hpp"

namespace trendlet {

using Date = std::chrono::sys_days;

/// Equally long, daily-indexed series. Row i of `values` belongs to
/// entity_ids[i]; column t to dates[t].
struct TimeSeriesPanel {
    std::vector<std::string> entity_ids;
    std::vector<Date> dates;
    Matrix values;
    bool normalized = false;

    std::size_t n_entities() const noexcept { return entity_ids.size(); }
    std::size_t n_days() const noexcept { return dates.size(); }

    std::size_t entity_index(std::string_view id) const {
        for (std::size_t i = 0; i < entity_ids.size(); ++i) {
            if (entity_ids[i] == id) return i;
        }
        fail(ErrorKind::InvalidInput, "unknown entity '" + std::string(id) + "'");
    }
};

// ---------------------------------------------------------------------------
// Dates and numbers
// ---------------------------------------------------------------------------

inline std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

/// Strict YYYY-MM-DD. False on malformed text or impossible calendar dates.
inline bool parse_date(std::string_view text, Date& out) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
    int y = 0;
    unsigned m = 0, d = 0;
    const auto num = [&](std::size_t pos, std::size_t len, auto& v) {
        const char* first = text.data() + pos;
        auto [ptr, ec] = std::from_chars(first, first + len, v);
        return ec == std::errc() && ptr == first + len;
    };
    if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return false;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}};
    if (!ymd.ok()) return false;
    out = Date{ymd};
    return true;
}

inline Date parse_date_or_throw(std::string_view text) {
    Date d;
    if (!parse_date(text, d)) fail(ErrorKind::InvalidInput, "bad date '" + std::string(text) + "'");
    return d;
}

/// Shortest-safe decimal form: 17 significant digits, round-trips exactly.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

inline bool parse_double(std::string_view cell, double& out) {
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size() && std::isfinite(out);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Reads `date,<entity1>,<entity2>,...` with one row per consecutive day.
inline TimeSeriesPanel ingest_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    const auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!detail::trim(line).empty()) return true;
        }
        return false;
    };

    if (!next_line()) fail(ErrorKind::EmptyInput, "no header row");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = detail::split_commas(line);
    if (header.size() < 2) fail(ErrorKind::EmptyInput, "header names no entities");

    TimeSeriesPanel panel;
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c].empty()) {
            fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ", column " +
                                            std::to_string(c + 1) + ": empty entity id");
        }
        panel.entity_ids.emplace_back(header[c]);
    }
    const std::size_t n_entities = panel.entity_ids.size();
    std::vector<std::vector<double>> columns(n_entities);

    while (next_line()) {
        const auto cells = detail::split_commas(line);
        const std::string where = "line " + std::to_string(line_no);
        if (cells.size() != n_entities + 1) {
            fail(ErrorKind::ParseError, where + ": expected " + std::to_string(n_entities + 1) +
                                            " cells, found " + std::to_string(cells.size()));
        }
        Date d;
        if (!parse_date(cells[0], d)) {
            fail(ErrorKind::ParseError, where + ", column 1: bad date '" + std::string(cells[0]) +
                                            "'");
        }
        if (!panel.dates.empty()) {
            const Date expected = panel.dates.back() + std::chrono::days{1};
            if (d < expected) {
                fail(ErrorKind::ParseError, where + ": date " + format_date(d) +
                                                " is not after " + format_date(panel.dates.back()));
            }
            if (d > expected) {
                fail(ErrorKind::GapError, where + ": missing date " + format_date(expected));
            }
        }
        panel.dates.push_back(d);
        for (std::size_t c = 0; c < n_entities; ++c) {
            double v;
            if (!detail::parse_double(cells[c + 1], v)) {
                fail(ErrorKind::ParseError, where + ", column " + std::to_string(c + 2) + " (" +
                                                panel.entity_ids[c] + "): bad number '" +
                                                std::string(cells[c + 1]) + "'");
            }
            columns[c].push_back(v);
        }
    }
    if (panel.dates.empty()) fail(ErrorKind::EmptyInput, "no data rows");

    panel.values = Matrix(n_entities, panel.dates.size());
    for (std::size_t c = 0; c < n_entities; ++c) {
        std::copy(columns[c].begin(), columns[c].end(), panel.values.row(c).begin());
    }
    return panel;
}

inline TimeSeriesPanel ingest_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
    return ingest_csv(in);
}

/// Mirror of ingest_csv; values printed with 17 significant digits.
inline void emit_csv(const TimeSeriesPanel& panel, std::ostream& out) {
    out << "date";
    for (const auto& id : panel.entity_ids) out << ',' << id;
    out << '\n';
    for (std::size_t t = 0; t < panel.n_days(); ++t) {
        out << format_date(panel.dates[t]);
        for (std::size_t e = 0; e < panel.n_entities(); ++e) {
            out << ',' << format_double(panel.values(e, t));
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

enum class DegeneratePolicy { Abort, Drop };

/// Per-row z-score with the population (1/N) standard deviation. Constant
/// rows raise DegenerateSeries, or are removed under DegeneratePolicy::Drop
/// (their ids appended to `dropped`).
inline TimeSeriesPanel normalize(const TimeSeriesPanel& panel,
                                 DegeneratePolicy policy = DegeneratePolicy::Abort,
                                 std::vector<std::string>* dropped = nullptr) {
    TimeSeriesPanel out;
    out.dates = panel.dates;
    out.normalized = true;
    const std::size_t n = panel.n_days();
    for (std::size_t e = 0; e < panel.n_entities(); ++e) {
        const auto row = panel.values.row(e);
        const bool constant =
            n == 0 || std::all_of(row.begin(), row.end(), [&](double v) { return v == row[0]; });
        double mean = 0.0;
        for (double v : row) mean += v;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double v : row) var += (v - mean) * (v - mean);
        const double sd = std::sqrt(var / static_cast<double>(n));
        if (constant || !(sd > 0.0)) {
            if (policy == DegeneratePolicy::Abort) {
                fail(ErrorKind::DegenerateSeries,
                     "entity '" + panel.entity_ids[e] + "' has zero variance");
            }
            if (dropped) dropped->push_back(panel.entity_ids[e]);
            continue;
        }
        std::vector<double> z(n);
        for (std::size_t t = 0; t < n; ++t) z[t] = (row[t] - mean) / sd;
        out.entity_ids.push_back(panel.entity_ids[e]);
        out.values.append_row(z);
    }
    if (out.entity_ids.empty()) fail(ErrorKind::DegenerateSeries, "every series is constant");
    return out;
}

}  // namespace trendlet
