#pragma once

// CSV ingestion. One file holds one household:
//
//   date,total[,day,peak,night]
//   2014-05,412.3,...
//
// Dates are YYYY-MM, strictly consecutive and ascending. Values are
// non-negative decimal kWh with '.' as the separator. LF or CRLF.

#include "loadcast/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loadcast {

struct Household {
    std::string name;
    std::map<TariffPeriod, MonthlySeries> series;  // Total always present

    [[nodiscard]] const MonthlySeries& total() const { return series.at(TariffPeriod::Total); }
};

struct Dataset {
    std::vector<Household> households;

    void add(Household h) {
        for (const auto& other : households) {
            if (other.name == h.name) throw std::invalid_argument("duplicate household name '" + h.name + "'");
        }
        if (!h.series.contains(TariffPeriod::Total)) {
            throw std::invalid_argument("household '" + h.name + "' has no total series");
        }
        const auto& ref = h.total();
        for (const auto& [period, s] : h.series) {
            if (s.start() != ref.start() || s.size() != ref.size()) {
                throw std::invalid_argument("household '" + h.name + "': series do not share start and length");
            }
        }
        households.push_back(std::move(h));
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        auto comma = line.find(',', pos);
        out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline std::string row_tag(std::size_t row) { return "row " + std::to_string(row) + ": "; }

}  // namespace detail

/// Parses one household from CSV text. Only the requested periods are kept,
/// plus `total`, which must always be present.
[[nodiscard]] inline Household parse_csv(std::string_view text, std::string name,
                                         const std::vector<TariffPeriod>& keep = {std::begin(kAllPeriods),
                                                                                  std::end(kAllPeriods)}) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos <= text.size();) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw std::invalid_argument(name + ": empty file, header row required");

    auto header = detail::split_fields(lines[0]);
    if (header.empty() || header[0] != "date") {
        throw std::invalid_argument(name + ": header must start with 'date'");
    }
    std::vector<TariffPeriod> columns;
    for (std::size_t i = 1; i < header.size(); ++i) {
        TariffPeriod p;
        try {
            p = parse_period(header[i]);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(name + ": unknown column '" + std::string(header[i]) + "'");
        }
        if (std::find(columns.begin(), columns.end(), p) != columns.end()) {
            throw std::invalid_argument(name + ": duplicate column '" + std::string(header[i]) + "'");
        }
        columns.push_back(p);
    }
    if (std::find(columns.begin(), columns.end(), TariffPeriod::Total) == columns.end()) {
        throw std::invalid_argument(name + ": missing required column 'total'");
    }
    if (lines.size() < 2) throw std::invalid_argument(name + ": no data rows");

    std::optional<MonthKey> start, previous;
    std::vector<std::vector<double>> values(columns.size());
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t row = li + 1;  // 1-based line number in the file
        auto fields = detail::split_fields(lines[li]);
        if (fields.size() != header.size()) {
            throw std::invalid_argument(name + ": " + detail::row_tag(row) + "expected " +
                                        std::to_string(header.size()) + " fields, got " +
                                        std::to_string(fields.size()));
        }
        MonthKey month;
        try {
            month = MonthKey::parse(fields[0]);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(name + ": " + detail::row_tag(row) + e.what());
        }
        if (previous) {
            if (month == *previous) {
                throw std::invalid_argument(name + ": duplicate month " + month.to_string() + " (row " +
                                            std::to_string(row) + ")");
            }
            if (month < *previous) {
                throw std::invalid_argument(name + ": month " + month.to_string() + " out of order (row " +
                                            std::to_string(row) + ")");
            }
            if (month != previous->next()) {
                throw std::invalid_argument(name + ": gap at " + previous->next().to_string() + " (row " +
                                            std::to_string(row) + ")");
            }
        } else {
            start = month;
        }
        previous = month;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto field = fields[c + 1];
            double v = 0.0;
            auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (field.empty() || ec != std::errc() || end != field.data() + field.size() || !std::isfinite(v)) {
                throw std::invalid_argument(name + ": " + detail::row_tag(row) + "non-numeric value '" +
                                            std::string(field) + "' in column " +
                                            std::string(to_string(columns[c])));
            }
            if (v < 0.0) {
                throw std::invalid_argument(name + ": " + detail::row_tag(row) + "negative value " +
                                            std::string(field) + " in column " +
                                            std::string(to_string(columns[c])));
            }
            values[c].push_back(v);
        }
    }

    Household h{std::move(name), {}};
    for (std::size_t c = 0; c < columns.size(); ++c) {
        bool wanted = columns[c] == TariffPeriod::Total ||
                      std::find(keep.begin(), keep.end(), columns[c]) != keep.end();
        if (wanted) h.series.emplace(columns[c], MonthlySeries(*start, std::move(values[c])));
    }
    return h;
}

/// Loads one household; the name defaults to the file stem.
[[nodiscard]] inline Household load_csv(const std::filesystem::path& path,
                                        const std::vector<TariffPeriod>& keep = {std::begin(kAllPeriods),
                                                                                 std::end(kAllPeriods)},
                                        std::string name = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (name.empty()) name = path.stem().string();
    return parse_csv(buf.str(), std::move(name), keep);
}

}  // namespace loadcast
