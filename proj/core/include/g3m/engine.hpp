#pragma once

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "g3m/means.hpp"

namespace g3m {

// A proposed swap: per-asset amounts tendered to the pool and paid out by it.
struct Trade {
    std::vector<double> input;
    std::vector<double> output;
};

// The requested swap cannot be satisfied: positive-exponent pools only hold a
// bounded amount of any one asset, so large enough buys have no solution.
struct InfeasibleTrade : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pool state: positive reserves, weights, a pool-valid mean spec, and the
// level C the trading value must hold. C is computed once at construction
// and carried through trades unchanged, so the constant-level rule cannot
// drift across long trade sequences.
class Pool {
public:
    Pool(std::vector<double> reserves, Weights weights, MeanSpec spec);

    std::size_t size() const noexcept { return reserves_.size(); }
    std::span<const double> reserves() const noexcept { return reserves_; }
    const Weights& weights() const noexcept { return weights_; }
    const MeanSpec& spec() const noexcept { return spec_; }
    double invariant() const noexcept { return invariant_; }

private:
    struct CarryInvariant {};
    Pool(CarryInvariant, std::vector<double> reserves, Weights weights, MeanSpec spec,
         double invariant);
    friend Pool execute_trade(const Pool& pool, const Trade& trade, double rel_tol);

    std::vector<double> reserves_;
    Weights weights_;
    MeanSpec spec_;
    double invariant_;
};

struct TradeQuote {
    Trade trade;
    std::vector<double> post_reserves;
    // trading_value(pool, trade) - C, recomputed from the solved trade.
    double invariant_residual = 0.0;
    // Filled by analytics (annotate_quote); NaN until then.
    double spot_rate = std::numeric_limits<double>::quiet_NaN();
    double slippage = std::numeric_limits<double>::quiet_NaN();
};

// Mean of the post-trade reserves R + input - output.
double trading_value(const Pool& pool, const Trade& trade);

// True iff the trade holds the pool level: |tau - C| <= rel_tol * C.
bool is_valid_trade(const Pool& pool, const Trade& trade, double rel_tol = 1e-9);

// Solves the unique payout of asset `out_index` for the given input vector
// (closed form per spec kind). input[out_index] must be zero.
TradeQuote solve_output(const Pool& pool, std::span<const double> input, std::size_t out_index);

// Solves the unique required input of asset `in_index` for the given payout
// vector. output[in_index] must be zero and every payout must leave a
// positive reserve.
TradeQuote solve_input(const Pool& pool, std::span<const double> output, std::size_t in_index);

// Applies a valid trade, returning the new pool with the level C retained.
Pool execute_trade(const Pool& pool, const Trade& trade, double rel_tol = 1e-9);

// Supremum of feasible input of asset `in_index` when buying asset
// `out_index`. nullopt means unbounded (geometric-kind pools support buys of
// any size); for positive power exponents the bound is finite, though it can
// overflow to +inf for very small p.
std::optional<double> max_buy_size(const Pool& pool, std::size_t in_index,
                                   std::size_t out_index);

}  // namespace g3m
