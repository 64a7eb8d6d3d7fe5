#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "noneq/integrate/trajectory.hpp"

namespace noneq {

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace detail_csv {

inline void add_indexed(std::vector<std::string>& cols, const std::string& base,
                        int count) {
    for (int i = 1; i <= count; ++i)
        cols.push_back(base + "_" + std::to_string(i));
}

} // namespace detail_csv

/// Column names for a trajectory, fixed order: t, q, p, S, N, W, then the
/// derived block H, T, sigma and the class-specific extras.
inline std::vector<std::string> trajectory_columns(const Trajectory& traj) {
    const StateLayout& L = traj.layout;
    std::vector<std::string> cols{"t"};
    detail_csv::add_indexed(cols, "q", L.n);
    detail_csv::add_indexed(cols, "p", L.n);
    if (L.has_S) cols.push_back("S");
    detail_csv::add_indexed(cols, "N", L.K);
    detail_csv::add_indexed(cols, "W", L.K);
    if (L.extended_momenta) {
        detail_csv::add_indexed(cols, "pN", L.K);
        cols.push_back("pS");
    }
    cols.push_back("H");
    if (traj.kind != SystemKind::LinearNonholonomic) {
        cols.push_back("T");
        cols.push_back("sigma");
    }
    if (!traj.empty()) {
        const DerivedQuantities& d = traj.front().derived;
        detail_csv::add_indexed(cols, "nu", L.R);
        detail_csv::add_indexed(cols, "J", static_cast<int>(d.rates.size()));
        detail_csv::add_indexed(cols, "A", static_cast<int>(d.affinities.size()));
        detail_csv::add_indexed(cols, "mu", static_cast<int>(d.mu.size()));
        detail_csv::add_indexed(cols, "flux", static_cast<int>(d.fluxes.size()));
        detail_csv::add_indexed(cols, "lambda",
                                static_cast<int>(d.multipliers.size()));
        if (d.constraint_residual) cols.push_back("constraint_residual");
    }
    return cols;
}

inline void append_row_values(std::vector<double>& row, const Vector& v) {
    for (int i = 0; i < v.size(); ++i) row.push_back(v[i]);
}

inline std::vector<double> trajectory_row(const Trajectory& traj,
                                          std::size_t i) {
    const StateLayout& L = traj.layout;
    const Sample& s = traj.samples[i];
    std::vector<double> row{s.t};
    append_row_values(row, s.y.segment(L.iq(), L.n));
    append_row_values(row, s.y.segment(L.ip(), L.n));
    if (L.has_S) row.push_back(s.y[L.iS()]);
    append_row_values(row, s.y.segment(L.iN(), L.K));
    append_row_values(row, s.y.segment(L.iW(), L.K));
    if (L.extended_momenta) {
        append_row_values(row, s.y.segment(L.ipN(), L.K));
        row.push_back(s.y[L.ipS()]);
    }
    row.push_back(s.derived.H.value_or(0.0));
    if (traj.kind != SystemKind::LinearNonholonomic) {
        row.push_back(s.derived.T.value_or(0.0));
        row.push_back(s.derived.sigma.value_or(0.0));
    }
    append_row_values(row, s.y.segment(L.inu(), L.R));
    append_row_values(row, s.derived.rates);
    append_row_values(row, s.derived.affinities);
    append_row_values(row, s.derived.mu);
    append_row_values(row, s.derived.fluxes);
    append_row_values(row, s.derived.multipliers);
    if (s.derived.constraint_residual)
        row.push_back(*s.derived.constraint_residual);
    return row;
}

/// Deterministic CSV: provenance in one '#' header line, no timestamps,
/// floats as shortest round-trip decimals.
inline std::string trajectory_csv(const Trajectory& traj,
                                  const std::string& provenance) {
    std::ostringstream os;
    os << "# " << provenance << "\n";
    const auto cols = trajectory_columns(traj);
    for (std::size_t c = 0; c < cols.size(); ++c)
        os << (c ? "," : "") << cols[c];
    os << "\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto row = trajectory_row(traj, i);
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_double(row[c]);
        os << "\n";
    }
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigurationError("cannot open for writing: " + path);
    f << content;
}

} // namespace noneq
