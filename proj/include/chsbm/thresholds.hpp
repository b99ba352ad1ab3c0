#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chsbm/core.hpp"

namespace chsbm {

enum class RegionVerdict { Impossible, Possible, Critical };

std::string verdict_name(RegionVerdict verdict);
RegionVerdict verdict_from_name(const std::string& name);

/// Information-theoretic threshold
///   I_m(p, q) = 2^(m-1) (m-1)! / [(sqrt(p)-sqrt(q))^2 + (sqrt(1-p)-sqrt(1-q))^2].
/// Exact recovery is impossible below it and possible above it.
/// p = q makes the denominator vanish -> DegenerateThreshold.
double info_threshold(std::uint32_t m, double p, double q);

/// Semidefinite-relaxation threshold
///   J_m(p, q) = 2^(m+2) (m-2)! [m p - (m - 2^m) q] / (p - q)^2,
/// strictly larger than I_m(p, q). Requires p > q.
double sdp_threshold(std::uint32_t m, double p, double q);

/// Compares t against I_m(p, q). Exact equality maps to Critical: neither
/// recovery regime covers the boundary itself.
RegionVerdict classify_region(std::uint32_t m, double p, double q, double t);

struct PhaseRow {
    std::uint32_t m = 0;
    double q = 0.0;
    double p = 0.0;
    double t = 0.0;
    double i_threshold = 0.0;
    double j_threshold = 0.0;
    RegionVerdict verdict = RegionVerdict::Impossible;
};

struct AxisRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Row-major grid (p outer, t inner) over inclusive linspaces. Both
/// thresholds ride along in every row so downstream plots can overlay the
/// I and J curves without recomputation.
std::vector<PhaseRow> phase_grid(std::uint32_t m, double q, AxisRange p_range,
                                 AxisRange t_range, std::uint32_t p_steps,
                                 std::uint32_t t_steps);

/// CSV with header `m,q,p,t,i_threshold,j_threshold,verdict`, floats at 10
/// significant digits.
void write_phase_csv(const std::vector<PhaseRow>& rows, std::ostream& out);
std::vector<PhaseRow> read_phase_csv(std::istream& in);

}  // namespace chsbm
