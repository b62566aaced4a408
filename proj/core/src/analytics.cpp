#include "g3m/analytics.hpp"

#include <cmath>

namespace g3m {

double spot_rate(const Pool& pool, std::size_t i, std::size_t j) {
    const auto r = pool.reserves();
    const auto& w = pool.weights();
    if (i >= r.size() || j >= r.size())
        throw std::invalid_argument("spot_rate: index out of range");
    if (i == j) throw std::invalid_argument("spot_rate: assets must differ");
    if (!(w[i] > 0.0) || !(w[j] > 0.0))
        throw std::invalid_argument("spot_rate: both assets must carry positive weight");

    return std::visit(
        detail::overloaded{
            [&](const PowerMean& m) { return (w[j] / w[i]) * std::pow(r[j] / r[i], m.p - 1.0); },
            [&](const GeometricMean&) { return (w[j] * r[i]) / (w[i] * r[j]); },
            [&](const FMean& m) {
                return (w[j] * f_derivative(m.f, r[j])) / (w[i] * f_derivative(m.f, r[i]));
            },
        },
        pool.spec());
}

double slippage(const Pool& pool, double amount_in, double amount_out, std::size_t i,
                std::size_t j) {
    if (!(amount_out > 0.0))
        throw std::invalid_argument("slippage: output amount must be positive");
    const double rate = spot_rate(pool, i, j);
    if (rate == 0.0 || !std::isfinite(rate))
        throw std::invalid_argument("slippage: spot rate must be finite and nonzero");
    return (amount_in / amount_out) / rate - 1.0;
}

void annotate_quote(const Pool& pool, TradeQuote& quote) {
    std::size_t in_index = 0, out_index = 0, in_count = 0, out_count = 0;
    for (std::size_t k = 0; k < quote.trade.input.size(); ++k) {
        if (quote.trade.input[k] > 0.0) {
            in_index = k;
            ++in_count;
        }
        if (quote.trade.output[k] > 0.0) {
            out_index = k;
            ++out_count;
        }
    }
    if (in_count != 1 || out_count != 1) return;  // rate undefined, leave NaN
    quote.spot_rate = spot_rate(pool, in_index, out_index);
    quote.slippage =
        (quote.trade.input[in_index] / quote.trade.output[out_index]) / quote.spot_rate - 1.0;
}

double input_for_eps(double p, double invariant, double r1, double eps) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("input_for_eps: requires 0 < p <= 1");
    if (!(invariant > 0.0)) throw std::invalid_argument("input_for_eps: requires C > 0");
    if (!(r1 > 0.0)) throw std::invalid_argument("input_for_eps: requires R1 > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("input_for_eps: requires eps > 0");

    double total;  // (2 C^p - eps^p)^(1/p)
    if (p < detail::kSmallPThreshold) {
        const double z =
            2.0 * std::expm1(p * std::log(invariant)) - std::expm1(p * std::log(eps));
        if (!(z > -1.0))
            throw std::domain_error("input_for_eps: 2 C^p must exceed eps^p");
        total = std::exp(std::log1p(z) / p);
    } else {
        const double bracket = 2.0 * std::pow(invariant, p) - std::pow(eps, p);
        if (!(bracket > 0.0))
            throw std::domain_error("input_for_eps: 2 C^p must exceed eps^p");
        total = std::pow(bracket, 1.0 / p);
    }
    return total - r1;
}

double slippage_power(double p, double invariant, double r1, double r2, double eps) {
    if (!(r2 > 0.0)) throw std::invalid_argument("slippage_power: requires R2 > 0");
    if (!(eps > 0.0 && eps < r2))
        throw std::invalid_argument("slippage_power: requires 0 < eps < R2");
    return std::pow(r1 / r2, p - 1.0) * input_for_eps(p, invariant, r1, eps) / (r2 - eps) - 1.0;
}

double slippage_geometric(double invariant, double r1, double r2, double eps) {
    if (!(invariant > 0.0) || !(r1 > 0.0) || !(r2 > 0.0))
        throw std::invalid_argument("slippage_geometric: requires positive C, R1, R2");
    if (!(eps > 0.0 && eps < r2))
        throw std::invalid_argument("slippage_geometric: requires 0 < eps < R2");
    return ((invariant * invariant / eps - r1) / (r2 - eps)) * (r2 / r1) - 1.0;
}

ScheduleParams::ScheduleParams(double invariant_, double s_) : invariant(invariant_), s(s_) {
    if (!std::isfinite(invariant) || !(invariant > 2.0))
        throw std::invalid_argument("schedule: requires 2 < C");
    if (!std::isfinite(s) || !(s > 1.0) || !(s < invariant / 2.0))
        throw std::invalid_argument("schedule: requires 1 < s < C/2");
}

double schedule_p(const ScheduleParams& params, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("schedule: requires 0 < eps < 1");
    const double root = params.s + std::sqrt(params.s * (params.s - 1.0));
    return std::log(root) / (std::log(params.invariant) - std::log(eps));
}

double schedule_exponent(double s) {
    if (!std::isfinite(s) || !(s > 1.0))
        throw std::invalid_argument("schedule_exponent: requires s > 1");
    return 1.0 - std::log(s) / std::log(s + std::sqrt(s * (s - 1.0)));
}

double schedule_identity_residual(const ScheduleParams& params, double eps) {
    const double p = schedule_p(params, eps);
    const double log_c = std::log(params.invariant);
    // 2 C^p - eps^p stays above 1 for C > 2, eps < 1, so log1p is safe
    const double z = 2.0 * std::expm1(p * log_c) - std::expm1(p * std::log(eps));
    const double log_lhs = std::log1p(z) / p;
    const double log_rhs = 2.0 * log_c - std::log(params.s) / p - std::log(eps);
    return std::expm1(log_lhs - log_rhs);
}

}  // namespace g3m
