#pragma once

// Tabular sweep output as CSV: '#' comment lines echoing parameters, one
// header row, then numeric rows at 12 significant digits. LF line endings.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mixent/errors.hpp"

namespace mixent {

inline constexpr int kCsvFormatVersion = 1;

// %.12g drops trailing zeros, so this is the shortest form at 12 digits.
inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class SweepTable {
public:
    SweepTable(std::string title, std::vector<std::string> header)
        : title_(std::move(title)), header_(std::move(header)) {
        if (header_.empty()) throw std::logic_error("sweep table needs at least one column");
    }

    void add_parameter(std::string name, std::string value) { provenance_.emplace_back(std::move(name), std::move(value)); }
    void add_parameter(std::string name, double value) { add_parameter(std::move(name), format_number(value)); }
    void add_note(std::string note) { notes_.push_back(std::move(note)); }

    // Rows must match the header arity, contain only finite values, and keep
    // the first column strictly monotone.
    void add_row(std::vector<double> row) {
        if (row.size() != header_.size())
            throw std::logic_error("row arity " + std::to_string(row.size()) + " != header arity " +
                                   std::to_string(header_.size()));
        for (double v : row)
            if (!std::isfinite(v)) throw NumericalFailure("non-finite value in sweep row");
        if (rows_.size() >= 1) {
            const double prev = rows_.back().front();
            const double dir = rows_.size() >= 2 ? rows_[rows_.size() - 1].front() - rows_[rows_.size() - 2].front() : 0.0;
            const double step = row.front() - prev;
            if (step == 0.0 || (dir != 0.0 && (dir > 0.0) != (step > 0.0)))
                throw std::logic_error("abscissa column is not strictly monotone");
        }
        rows_.push_back(std::move(row));
    }

    const std::string& title() const noexcept { return title_; }
    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& provenance() const noexcept { return provenance_; }

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header_.size(); ++i)
            if (header_[i] == name) return i;
        throw std::out_of_range("no column named " + name);
    }

    void write_csv(std::ostream& os) const {
        os << "# " << title_ << '\n';
        os << "# format-version: " << kCsvFormatVersion << '\n';
        for (const auto& [k, v] : provenance_) os << "# " << k << " = " << v << '\n';
        for (const auto& n : notes_) os << "# note: " << n << '\n';
        for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
        os << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
            os << '\n';
        }
    }

    std::string to_csv() const {
        std::ostringstream os;
        write_csv(os);
        return os.str();
    }

private:
    std::string title_;
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> provenance_;
    std::vector<std::string> notes_;
};

inline constexpr double kOpenEndpointShrink = 1e-6;

// steps points evenly spaced on [lo, hi]; an excluded endpoint is moved
// inward by kOpenEndpointShrink.
inline std::vector<double> sweep_points(double lo, double hi, int steps, bool open_lo, bool open_hi) {
    detail::require(steps >= 2, "sweep needs at least 2 steps");
    detail::require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "sweep needs lo < hi");
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) v[k] = lo + (hi - lo) * double(k) / (steps - 1);
    v.front() = open_lo ? lo + kOpenEndpointShrink : lo;
    v.back() = open_hi ? hi - kOpenEndpointShrink : hi;
    return v;
}

}  // namespace mixent
