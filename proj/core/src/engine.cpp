#include "g3m/engine.hpp"

#include <cmath>

namespace g3m {

namespace {

void check_amounts(std::span<const double> v, std::size_t n, const char* who) {
    if (v.size() != n) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    for (double a : v) {
        if (!std::isfinite(a) || a < 0.0)
            throw std::invalid_argument(std::string(who) +
                                        ": amounts must be finite and nonnegative");
    }
}

std::vector<double> post_trade_reserves(const Pool& pool, const Trade& trade) {
    const auto r = pool.reserves();
    check_amounts(trade.input, r.size(), "trade input");
    check_amounts(trade.output, r.size(), "trade output");
    std::vector<double> post(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        post[i] = r[i] + trade.input[i] - trade.output[i];
        if (post[i] < 0.0)
            throw std::invalid_argument("trade: output exceeds the available reserve");
    }
    return post;
}

// Restores the pool level given the other reserves already adjusted by the
// trade: returns the value v such that the mean of `adjusted` with entry
// `idx` replaced by v equals the pool's level. Throws InfeasibleTrade when
// no such v exists (positive-power pools with too large an input).
double solve_reserve_for_level(const Pool& pool, std::span<const double> adjusted,
                               std::size_t idx, const char* who) {
    const auto& w = pool.weights();
    const double level = pool.invariant();

    return std::visit(
        detail::overloaded{
            [&](const PowerMean& m) {
                const double p = m.p;
                if (p >= detail::kSmallPThreshold) {
                    double rest = 0.0;
                    for (std::size_t k = 0; k < adjusted.size(); ++k) {
                        if (k == idx || w[k] == 0.0) continue;
                        rest += w[k] * std::pow(adjusted[k], p);
                    }
                    const double target = (std::pow(level, p) - rest) / w[idx];
                    if (!(target > 0.0))
                        throw InfeasibleTrade(std::string(who) +
                                              ": trade exceeds the pool's bounded liquidity");
                    return std::pow(target, 1.0 / p);
                }
                // log-domain form of the same bracket: target = 1 + z with
                // z = (expm1(p ln C) - sum_{k != idx} w_k expm1(p ln a_k)) / w_idx
                double acc = std::expm1(p * std::log(level));
                for (std::size_t k = 0; k < adjusted.size(); ++k) {
                    if (k == idx || w[k] == 0.0) continue;
                    acc -= w[k] * std::expm1(p * std::log(adjusted[k]));
                }
                const double z = acc / w[idx];
                if (!(z > -1.0))
                    throw InfeasibleTrade(std::string(who) +
                                          ": trade exceeds the pool's bounded liquidity");
                return std::exp(std::log1p(z) / p);
            },
            [&](const GeometricMean&) {
                double rest = 0.0;
                for (std::size_t k = 0; k < adjusted.size(); ++k) {
                    if (k == idx || w[k] == 0.0) continue;
                    rest += w[k] * std::log(adjusted[k]);
                }
                return std::exp((std::log(level) - rest) / w[idx]);
            },
            [&](const FMean& m) {
                const auto r = pool.reserves();
                double target = 0.0;  // K = sum_k w_k f(R_k)
                for (std::size_t k = 0; k < r.size(); ++k) target += w[k] * f_apply(m.f, r[k]);
                for (std::size_t k = 0; k < adjusted.size(); ++k) {
                    if (k == idx || w[k] == 0.0) continue;
                    target -= w[k] * f_apply(m.f, adjusted[k]);
                }
                target /= w[idx];
                if (const auto* pf = std::get_if<PowerF>(&m.f)) {
                    if (!(target > 0.0))
                        throw InfeasibleTrade(std::string(who) +
                                              ": trade exceeds the pool's bounded liquidity");
                    (void)pf;
                }
                return f_invert(m.f, target);
            },
        },
        pool.spec());
}

TradeQuote make_quote(const Pool& pool, Trade trade) {
    TradeQuote quote;
    quote.trade = std::move(trade);
    quote.post_reserves.resize(pool.size());
    const auto r = pool.reserves();
    for (std::size_t i = 0; i < r.size(); ++i)
        quote.post_reserves[i] = r[i] + quote.trade.input[i] - quote.trade.output[i];
    quote.invariant_residual = trading_value(pool, quote.trade) - pool.invariant();
    // every quote the engine hands out must validate; trades so deep that the
    // post reserve drowns in round-off cannot be served
    if (!(std::abs(quote.invariant_residual) <= 1e-9 * pool.invariant()))
        throw InfeasibleTrade(
            "solve: trade too deep to hold the pool level within tolerance");
    return quote;
}

}  // namespace

Pool::Pool(std::vector<double> reserves, Weights weights, MeanSpec spec)
    : reserves_(std::move(reserves)), weights_(std::move(weights)), spec_(std::move(spec)) {
    if (!pool_valid(spec_))
        throw std::invalid_argument(
            "pool: mean spec is not pool-valid (power exponent must lie in (0, 1])");
    if (reserves_.size() != weights_.size())
        throw std::invalid_argument("pool: reserve/weight dimension mismatch");
    for (double r : reserves_) {
        if (!std::isfinite(r) || !(r > 0.0))
            throw std::invalid_argument("pool: reserves must be positive and finite");
    }
    invariant_ = mean_dispatch(reserves_, weights_, spec_);
}

Pool::Pool(CarryInvariant, std::vector<double> reserves, Weights weights, MeanSpec spec,
           double invariant)
    : reserves_(std::move(reserves)),
      weights_(std::move(weights)),
      spec_(std::move(spec)),
      invariant_(invariant) {}

double trading_value(const Pool& pool, const Trade& trade) {
    const auto post = post_trade_reserves(pool, trade);
    return mean_dispatch(post, pool.weights(), pool.spec());
}

bool is_valid_trade(const Pool& pool, const Trade& trade, double rel_tol) {
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("is_valid_trade: rel_tol must be positive");
    return std::abs(trading_value(pool, trade) - pool.invariant()) <=
           rel_tol * pool.invariant();
}

TradeQuote solve_output(const Pool& pool, std::span<const double> input,
                        std::size_t out_index) {
    const auto r = pool.reserves();
    if (out_index >= r.size())
        throw std::invalid_argument("solve_output: output index out of range");
    check_amounts(input, r.size(), "solve_output input");
    if (input[out_index] != 0.0)
        throw std::invalid_argument("solve_output: input on the output asset must be zero");
    if (!(pool.weights()[out_index] > 0.0))
        throw std::invalid_argument("solve_output: output asset must carry positive weight");

    std::vector<double> adjusted(r.begin(), r.end());
    for (std::size_t k = 0; k < r.size(); ++k) adjusted[k] += input[k];

    const double new_reserve = solve_reserve_for_level(pool, adjusted, out_index, "solve_output");
    double amount_out = r[out_index] - new_reserve;
    if (amount_out < 0.0) {
        // a nonnegative input can never lower the mean; tolerate round-off at
        // the zero-trade end only
        if (amount_out < -1e-12 * r[out_index])
            throw std::logic_error("solve_output: input lowered the pool level");
        amount_out = 0.0;
    }
    if (amount_out >= r[out_index])
        throw InfeasibleTrade("solve_output: trade would drain the output reserve");

    Trade trade;
    trade.input.assign(input.begin(), input.end());
    trade.output.assign(r.size(), 0.0);
    trade.output[out_index] = amount_out;
    return make_quote(pool, std::move(trade));
}

TradeQuote solve_input(const Pool& pool, std::span<const double> output,
                       std::size_t in_index) {
    const auto r = pool.reserves();
    if (in_index >= r.size())
        throw std::invalid_argument("solve_input: input index out of range");
    check_amounts(output, r.size(), "solve_input output");
    if (output[in_index] != 0.0)
        throw std::invalid_argument("solve_input: output on the input asset must be zero");
    if (!(pool.weights()[in_index] > 0.0))
        throw std::invalid_argument("solve_input: input asset must carry positive weight");
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (output[k] >= r[k])
            throw std::invalid_argument("solve_input: output must leave a positive reserve");
    }

    std::vector<double> adjusted(r.begin(), r.end());
    for (std::size_t k = 0; k < r.size(); ++k) adjusted[k] -= output[k];

    const double new_reserve = solve_reserve_for_level(pool, adjusted, in_index, "solve_input");
    double amount_in = new_reserve - r[in_index];
    if (amount_in < 0.0) {
        if (amount_in < -1e-12 * r[in_index])
            throw std::logic_error("solve_input: payout raised the pool level");
        amount_in = 0.0;
    }

    Trade trade;
    trade.input.assign(r.size(), 0.0);
    trade.input[in_index] = amount_in;
    trade.output.assign(output.begin(), output.end());
    return make_quote(pool, std::move(trade));
}

Pool execute_trade(const Pool& pool, const Trade& trade, double rel_tol) {
    if (!is_valid_trade(pool, trade, rel_tol))
        throw std::invalid_argument(
            "execute_trade: trade does not hold the pool level within tolerance");
    auto post = post_trade_reserves(pool, trade);
    for (double v : post) {
        if (!(v > 0.0))
            throw std::invalid_argument("execute_trade: post-trade reserves must stay positive");
    }
    return Pool(Pool::CarryInvariant{}, std::move(post), pool.weights(), pool.spec(),
                pool.invariant());
}

std::optional<double> max_buy_size(const Pool& pool, std::size_t in_index,
                                   std::size_t out_index) {
    const auto r = pool.reserves();
    const auto& w = pool.weights();
    if (in_index >= r.size() || out_index >= r.size())
        throw std::invalid_argument("max_buy_size: index out of range");
    if (in_index == out_index)
        throw std::invalid_argument("max_buy_size: assets must differ");
    if (!(w[in_index] > 0.0) || !(w[out_index] > 0.0))
        throw std::invalid_argument("max_buy_size: both assets must carry positive weight");

    const double level = pool.invariant();
    return std::visit(
        detail::overloaded{
            [&](const PowerMean& m) -> std::optional<double> {
                // input that drives the output reserve to exactly zero
                double rest = 0.0;
                for (std::size_t k = 0; k < r.size(); ++k) {
                    if (k == in_index || k == out_index || w[k] == 0.0) continue;
                    rest += w[k] * std::pow(r[k], m.p);
                }
                const double target = (std::pow(level, m.p) - rest) / w[in_index];
                return std::pow(target, 1.0 / m.p) - r[in_index];
            },
            [&](const GeometricMean&) -> std::optional<double> { return std::nullopt; },
            [&](const FMean& m) -> std::optional<double> {
                if (std::holds_alternative<LogF>(m.f)) return std::nullopt;
                double target = 0.0;
                for (std::size_t k = 0; k < r.size(); ++k)
                    target += w[k] * f_apply(m.f, r[k]);
                for (std::size_t k = 0; k < r.size(); ++k) {
                    if (k == in_index || k == out_index || w[k] == 0.0) continue;
                    target -= w[k] * f_apply(m.f, r[k]);
                }
                // f(0) = 0 for the positive-power generator
                target /= w[in_index];
                return f_invert(m.f, target) - r[in_index];
            },
        },
        pool.spec());
}

}  // namespace g3m
