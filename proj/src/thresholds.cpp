#include "chsbm/thresholds.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "chsbm/io.hpp"

namespace chsbm {

namespace {

void check_threshold_args(std::uint32_t m, double p, double q) {
    if (m < 2) {
        throw ParamError("threshold: m must be at least 2");
    }
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
        throw ParamError("threshold: p and q must lie in (0, 1)");
    }
}

double pow2(std::uint32_t e) { return std::ldexp(1.0, static_cast<int>(e)); }

double factorial(std::uint32_t k) {
    double value = 1.0;
    for (std::uint32_t i = 2; i <= k; ++i) {
        value *= static_cast<double>(i);
    }
    return value;
}

}  // namespace

std::string verdict_name(RegionVerdict verdict) {
    switch (verdict) {
        case RegionVerdict::Impossible: return "Impossible";
        case RegionVerdict::Possible: return "Possible";
        case RegionVerdict::Critical: return "Critical";
    }
    throw Error("verdict_name: unknown verdict");
}

RegionVerdict verdict_from_name(const std::string& name) {
    if (name == "Impossible") return RegionVerdict::Impossible;
    if (name == "Possible") return RegionVerdict::Possible;
    if (name == "Critical") return RegionVerdict::Critical;
    throw Error("verdict_from_name: unknown verdict '" + name + "'");
}

double info_threshold(std::uint32_t m, double p, double q) {
    check_threshold_args(m, p, q);
    if (p == q) {
        throw DegenerateThreshold("info_threshold: p = q gives an infinite threshold");
    }
    const double dp = std::sqrt(p) - std::sqrt(q);
    const double dc = std::sqrt(1.0 - p) - std::sqrt(1.0 - q);
    const double denominator = dp * dp + dc * dc;
    return pow2(m - 1) * factorial(m - 1) / denominator;
}

double sdp_threshold(std::uint32_t m, double p, double q) {
    check_threshold_args(m, p, q);
    if (p == q) {
        throw DegenerateThreshold("sdp_threshold: p = q gives an infinite threshold");
    }
    if (p < q) {
        throw ParamError("sdp_threshold: requires p > q");
    }
    const double diff = p - q;
    const double bracket = static_cast<double>(m) * p - (static_cast<double>(m) - pow2(m)) * q;
    return pow2(m + 2) * factorial(m - 2) * bracket / (diff * diff);
}

RegionVerdict classify_region(std::uint32_t m, double p, double q, double t) {
    if (!(t > 0.0)) {
        throw ParamError("classify_region: t must be positive");
    }
    const double threshold = info_threshold(m, p, q);
    if (t < threshold) {
        return RegionVerdict::Impossible;
    }
    if (t > threshold) {
        return RegionVerdict::Possible;
    }
    return RegionVerdict::Critical;
}

std::vector<PhaseRow> phase_grid(std::uint32_t m, double q, AxisRange p_range,
                                 AxisRange t_range, std::uint32_t p_steps,
                                 std::uint32_t t_steps) {
    if (p_steps < 2 || t_steps < 2) {
        throw RangeError("phase_grid: need at least 2 steps per axis");
    }
    if (!(p_range.lo < p_range.hi) || !(t_range.lo < t_range.hi)) {
        throw RangeError("phase_grid: empty or inverted range");
    }
    if (!(p_range.lo > q && p_range.hi < 1.0)) {
        throw RangeError("phase_grid: p range must lie inside (q, 1)");
    }
    if (!(t_range.lo > 0.0)) {
        throw RangeError("phase_grid: t range must lie inside (0, inf)");
    }

    std::vector<PhaseRow> rows;
    rows.reserve(static_cast<std::size_t>(p_steps) * t_steps);
    for (std::uint32_t ip = 0; ip < p_steps; ++ip) {
        const double p = p_range.lo +
                         (p_range.hi - p_range.lo) * static_cast<double>(ip) /
                             static_cast<double>(p_steps - 1);
        const double i_threshold = info_threshold(m, p, q);
        const double j_threshold = sdp_threshold(m, p, q);
        for (std::uint32_t it = 0; it < t_steps; ++it) {
            const double t = t_range.lo +
                             (t_range.hi - t_range.lo) * static_cast<double>(it) /
                                 static_cast<double>(t_steps - 1);
            PhaseRow row;
            row.m = m;
            row.q = q;
            row.p = p;
            row.t = t;
            row.i_threshold = i_threshold;
            row.j_threshold = j_threshold;
            row.verdict = classify_region(m, p, q, t);
            rows.push_back(row);
        }
    }
    return rows;
}

void write_phase_csv(const std::vector<PhaseRow>& rows, std::ostream& out) {
    out << "m,q,p,t,i_threshold,j_threshold,verdict\n";
    for (const PhaseRow& row : rows) {
        out << row.m << ',' << io::format_double_10sig(row.q) << ','
            << io::format_double_10sig(row.p) << ',' << io::format_double_10sig(row.t)
            << ',' << io::format_double_10sig(row.i_threshold) << ','
            << io::format_double_10sig(row.j_threshold) << ','
            << verdict_name(row.verdict) << "\n";
    }
}

std::vector<PhaseRow> read_phase_csv(std::istream& in) {
    std::string line;
    std::size_t line_number = 0;
    if (!std::getline(in, line)) {
        throw FormatError("missing CSV header", 1);
    }
    ++line_number;
    if (line != "m,q,p,t,i_threshold,j_threshold,verdict") {
        throw FormatError("unexpected CSV header '" + line + "'", line_number);
    }
    std::vector<PhaseRow> rows;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string token;
        PhaseRow row;
        auto next = [&](const char* what) {
            if (!std::getline(fields, token, ',')) {
                throw FormatError(std::string("missing field ") + what, line_number);
            }
            return token;
        };
        row.m = static_cast<std::uint32_t>(std::stoul(next("m")));
        row.q = std::stod(next("q"));
        row.p = std::stod(next("p"));
        row.t = std::stod(next("t"));
        row.i_threshold = std::stod(next("i_threshold"));
        row.j_threshold = std::stod(next("j_threshold"));
        row.verdict = verdict_from_name(next("verdict"));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace chsbm
