#pragma once

#include "g3m/engine.hpp"

namespace g3m {

// Spot exchange rate between assets i (paid in) and j (paid out):
// (d tau / d R_j) / (d tau / d R_i) from the analytic partials at the
// current reserves.
double spot_rate(const Pool& pool, std::size_t i, std::size_t j);

// (amount_in / amount_out) / spot_rate - 1: how far the realized rate of a
// trade falls short of the marginal rate before it.
double slippage(const Pool& pool, double amount_in, double amount_out, std::size_t i,
                std::size_t j);

// Fills spot_rate and slippage on a solved quote with exactly one input and
// one output asset; leaves them NaN otherwise.
void annotate_quote(const Pool& pool, TradeQuote& quote);

// ---------------------------------------------------------------------------
// Two-asset, uniform-weight closed forms. Trades are parametrized by the
// reserve left on the output side, eps = R2 - amount_out; small eps means a
// deep buy.
// ---------------------------------------------------------------------------

// Input of asset 1 that drives the output reserve down to eps on a power-p
// pool with level C: (2 C^p - eps^p)^(1/p) - R1. Uses the log-domain path
// for small p.
double input_for_eps(double p, double invariant, double r1, double eps);

// Slippage of that trade: (R1/R2)^(p-1) * input_for_eps / (R2 - eps) - 1.
double slippage_power(double p, double invariant, double r1, double r2, double eps);

// Geometric-pool analogue: ((C^2/eps - R1) / (R2 - eps)) * (R2/R1) - 1.
double slippage_geometric(double invariant, double r1, double r2, double eps);

// Depth schedule: assigns a power exponent to each trade depth so that
// slippage grows only like eps^{-c(s)} with c(s) < 1, while the geometric
// pool's grows like eps^{-1}.
struct ScheduleParams {
    ScheduleParams(double invariant, double s);
    double invariant;  // pool level C, requires 2 < C
    double s;          // shape, requires 1 < s < C/2
};

// p_s(eps) = log(s + sqrt(s^2 - s)) / log(C / eps), in (0, 1] for eps < 1.
double schedule_p(const ScheduleParams& params, double eps);

// c(s) = 1 - log(s) / log(s + sqrt(s^2 - s)), in (0, 1).
double schedule_exponent(double s);

// Relative gap between (2 C^p - eps^p)^(1/p) and C^2 / (s^(1/p) eps) at
// p = schedule_p(eps). The schedule is derived by equating the two, so the
// gap is round-off only; both sides are evaluated in the log domain.
double schedule_identity_residual(const ScheduleParams& params, double eps);

}  // namespace g3m
