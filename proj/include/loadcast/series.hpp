#pragma once

#include <cmath>
#include <compare>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loadcast {

/// Calendar month, ordered chronologically.
struct MonthKey {
    int year = 0;
    int month = 1;  // 1..12

    constexpr MonthKey() = default;
    constexpr MonthKey(int y, int m) : year(y), month(m) {
        if (m < 1 || m > 12) {
            throw std::invalid_argument("month must be in 1..12");
        }
    }

    constexpr auto operator<=>(const MonthKey&) const = default;

    /// Month `n` steps away (negative steps go back in time).
    [[nodiscard]] constexpr MonthKey plus(long n) const {
        long serial = static_cast<long>(year) * 12 + (month - 1) + n;
        long y = serial >= 0 ? serial / 12 : -((-serial + 11) / 12);
        return {static_cast<int>(y), static_cast<int>(serial - y * 12) + 1};
    }
    [[nodiscard]] constexpr MonthKey next() const { return plus(1); }

    [[nodiscard]] std::string to_string() const {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
        return buf;
    }

    /// Parses `YYYY-MM`.
    static MonthKey parse(std::string_view text) {
        auto digits = [](std::string_view s) {
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        if (text.size() != 7 || text[4] != '-' || !digits(text.substr(0, 4)) ||
            !digits(text.substr(5, 2))) {
            throw std::invalid_argument("invalid month '" + std::string(text) +
                                        "', expected YYYY-MM");
        }
        int y = std::stoi(std::string(text.substr(0, 4)));
        int m = std::stoi(std::string(text.substr(5, 2)));
        if (m < 1 || m > 12) {
            throw std::invalid_argument("invalid month '" + std::string(text) + "'");
        }
        return {y, m};
    }
};

/// Signed number of months from `origin` to `key`.
[[nodiscard]] constexpr long month_index(MonthKey key, MonthKey origin) {
    return (static_cast<long>(key.year) - origin.year) * 12 + (key.month - origin.month);
}

/// Contiguous monthly consumption values in kWh, starting at `start()`.
/// Values are finite and non-negative; there is at least one.
class MonthlySeries {
public:
    MonthlySeries(MonthKey start, std::vector<double> values)
        : start_(start), values_(std::move(values)) {
        if (values_.empty()) {
            throw std::invalid_argument("monthly series must hold at least one value");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
                throw std::invalid_argument("consumption at " + start_.plus(long(i)).to_string() +
                                            " must be finite and non-negative");
            }
        }
    }

    [[nodiscard]] MonthKey start() const { return start_; }
    [[nodiscard]] MonthKey end() const { return start_.plus(long(values_.size()) - 1); }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] MonthKey month_at(std::size_t i) const { return start_.plus(long(i)); }

    bool operator==(const MonthlySeries&) const = default;

private:
    MonthKey start_;
    std::vector<double> values_;
};

/// Consecutive three-month means; block i covers months [3i, 3i+3) counted from `start`.
struct QuarterlySeries {
    MonthKey start;
    std::vector<double> values;
};

enum class TariffPeriod { Total, Day, Peak, Night };

inline constexpr TariffPeriod kAllPeriods[] = {TariffPeriod::Total, TariffPeriod::Day,
                                               TariffPeriod::Peak, TariffPeriod::Night};

[[nodiscard]] inline std::string_view to_string(TariffPeriod p) {
    switch (p) {
        case TariffPeriod::Total: return "total";
        case TariffPeriod::Day: return "day";
        case TariffPeriod::Peak: return "peak";
        case TariffPeriod::Night: return "night";
    }
    return "?";
}

/// Clock window of a tariff period, e.g. "06:00-17:00".
[[nodiscard]] inline std::string_view clock_window(TariffPeriod p) {
    switch (p) {
        case TariffPeriod::Total: return "00:00-24:00";
        case TariffPeriod::Day: return "06:00-17:00";
        case TariffPeriod::Peak: return "17:00-22:00";
        case TariffPeriod::Night: return "22:00-06:00";
    }
    return "?";
}

[[nodiscard]] inline TariffPeriod parse_period(std::string_view name) {
    for (auto p : kAllPeriods)
        if (to_string(p) == name) return p;
    throw std::invalid_argument("unknown tariff period '" + std::string(name) + "'");
}

/// Three-month means aligned to the series start; a trailing partial block is dropped.
[[nodiscard]] inline QuarterlySeries aggregate_quarterly(const MonthlySeries& s) {
    if (s.size() < 3) {
        throw std::invalid_argument("insufficient data for quarterly aggregation");
    }
    QuarterlySeries q{s.start(), {}};
    q.values.reserve(s.size() / 3);
    for (std::size_t i = 0; i + 3 <= s.size(); i += 3) {
        q.values.push_back((s[i] + s[i + 1] + s[i + 2]) / 3.0);
    }
    return q;
}

/// Splits off the last `k` months as a test segment.
[[nodiscard]] inline std::pair<MonthlySeries, MonthlySeries> split_holdout(const MonthlySeries& s,
                                                                           std::size_t k) {
    if (k < 1 || k >= s.size()) {
        throw std::invalid_argument("holdout of " + std::to_string(k) +
                                    " months is out of range for a series of length " +
                                    std::to_string(s.size()));
    }
    auto v = s.values();
    std::size_t cut = s.size() - k;
    return {MonthlySeries(s.start(), {v.begin(), v.begin() + long(cut)}),
            MonthlySeries(s.month_at(cut), {v.begin() + long(cut), v.end()})};
}

/// Joins `tail` onto `head`; `tail` must begin the month after `head` ends.
[[nodiscard]] inline MonthlySeries concatenate(const MonthlySeries& head, const MonthlySeries& tail) {
    if (tail.start() != head.end().next()) {
        throw std::invalid_argument("series are not contiguous");
    }
    std::vector<double> v(head.values().begin(), head.values().end());
    v.insert(v.end(), tail.values().begin(), tail.values().end());
    return {head.start(), std::move(v)};
}

}  // namespace loadcast
