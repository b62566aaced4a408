#pragma once

#include <iosfwd>
#include <utility>

#include "g3m/analytics.hpp"

namespace g3m {

// Scaling experiment over the dyadic grid eps = 2^-k, k = k_min..k_max
// (strictly decreasing in eps, all below 1). Reserves are pinned at
// R1 = R2 = C so one pool serves the whole sweep. Slopes are fitted on the
// smallest-eps tail of the grid, where the power laws dominate the -R1
// offset.
struct ScalingConfig {
    ScheduleParams params{4.0, 4.0 / 3.0};
    int k_min = 4;
    int k_max = 40;
    double tail_fraction = 0.5;
};

struct ScalingRow {
    double eps = 0.0;
    double p = 0.0;                  // schedule_p at this depth
    double delta1 = 0.0;             // required input of asset 1
    double slip_p = 0.0;             // slippage of the scheduled power pool
    double slip_0 = 0.0;             // slippage of the geometric pool
    double identity_residual = 0.0;  // schedule_identity_residual
};

struct ScalingReport {
    std::vector<ScalingRow> rows;  // in grid order, largest eps first
    double slope_slip = 0.0;       // log|slip_p| vs log eps
    double slope_input = 0.0;      // log delta1  vs log eps
    double slope_slip0 = 0.0;      // log|slip_0| vs log eps
    double c_target = 0.0;         // schedule_exponent(s)
};

// Deterministic: identical configs produce identical reports (and CSV bytes).
ScalingReport run_scaling(const ScalingConfig& config);

// Ordinary least-squares slope of log(value) against log(eps) over the
// trailing ceil(n * tail_fraction) points (at least 2). Points are expected
// in grid order (decreasing eps); every value must be positive.
double fit_loglog_slope(std::span<const std::pair<double, double>> points,
                        double tail_fraction);

// CSV with header "eps,p,delta1,S_p,S_0,identity_residual", one row per grid
// point, 17 significant digits, LF line endings. Values round-trip exactly.
void write_scaling_csv(const ScalingReport& report, std::ostream& out);
std::vector<ScalingRow> read_scaling_csv(std::istream& in);

}  // namespace g3m
