#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace g3m {

namespace detail {

// Below this exponent magnitude, power means are evaluated in the log
// domain (expm1/log1p); direct pow loses all significant digits as p -> 0.
inline constexpr double kSmallPThreshold = 1e-3;

// Accepted drift of a raw weight vector's sum from 1 before normalization.
inline constexpr double kWeightSumTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace detail

// Nonnegative weight vector of length >= 2 whose entries sum to 1.
// Accepts inputs whose sum drifts from 1 by at most 1e-12 (decimal
// round-off in config files) and renormalizes exactly.
class Weights {
public:
    explicit Weights(std::vector<double> w);

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    std::span<const double> values() const noexcept { return w_; }

private:
    std::vector<double> w_;
};

// mu_p(x) = (sum_i w_i x_i^p)^(1/p), any real p != 0.
struct PowerMean {
    double p;
};

// mu_0(x) = prod_i x_i^(w_i), the p -> 0 limit of the power mean.
struct GeometricMean {};

// Quasi-arithmetic generator catalog: f(x) = x^p or f(x) = ln x.
struct PowerF {
    double p;  // p != 0
};
struct LogF {};
using FKind = std::variant<PowerF, LogF>;

// M_{f,w}(x) = f^{-1}(sum_i w_i f(x_i)).
struct FMean {
    FKind f;
};

using MeanSpec = std::variant<PowerMean, GeometricMean, FMean>;

// Specs allowed to define a pool: power exponents restricted to (0, 1]
// (the concave range), geometric, and the matching f-mean forms.
bool pool_valid(const MeanSpec& spec) noexcept;

std::string describe(const MeanSpec& spec);

double generalized_mean(std::span<const double> x, const Weights& w, double p);
double geometric_mean(std::span<const double> x, const Weights& w);
double f_mean(std::span<const double> x, const Weights& w, const FKind& f);
double mean_dispatch(std::span<const double> x, const Weights& w, const MeanSpec& spec);

// Generator pieces, exposed for the swap solvers and spot rates.
double f_apply(const FKind& f, double x);
double f_invert(const FKind& f, double y);
double f_derivative(const FKind& f, double x);

// mu((1-t)x + ty) - [(1-t)mu(x) + t mu(y)]; >= 0 (up to round-off) for
// every pool-valid spec.
double concavity_probe(const MeanSpec& spec, const Weights& w, std::span<const double> x,
                       std::span<const double> y, double t);

// Unweighted form: (sum x_i^p)^(1/p) evaluated at x+y, minus the two
// separate evaluations; >= 0 (up to round-off) for p in (0, 1].
double superadditivity_gap(double p, std::span<const double> x, std::span<const double> y);

// mu(t x) - t mu(x); all catalog means are first-order homogeneous.
double homogeneity_gap(const MeanSpec& spec, const Weights& w, std::span<const double> x,
                       double t);

}  // namespace g3m
