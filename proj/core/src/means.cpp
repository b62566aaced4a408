#include "g3m/means.hpp"

#include <cmath>
#include <cstdio>

namespace g3m {

namespace {

void check_finite_nonnegative(std::span<const double> x, const char* who) {
    for (double v : x) {
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(who) + ": entries must be finite");
        if (v < 0.0)
            throw std::invalid_argument(std::string(who) + ": entries must be nonnegative");
    }
}

void check_dimensions(std::span<const double> x, const Weights& w, const char* who) {
    if (x.size() != w.size())
        throw std::invalid_argument(std::string(who) + ": value/weight dimension mismatch");
}

void validate_fkind(const FKind& f) {
    if (const auto* pf = std::get_if<PowerF>(&f)) {
        if (pf->p == 0.0 || !std::isfinite(pf->p))
            throw std::invalid_argument("fmean: power generator needs a finite nonzero exponent");
    }
}

}  // namespace

Weights::Weights(std::vector<double> w) : w_(std::move(w)) {
    if (w_.size() < 2) throw std::invalid_argument("weights: need at least 2 entries");
    double sum = 0.0;
    for (double v : w_) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("weights: entries must be finite and nonnegative");
        sum += v;
    }
    if (!(std::abs(sum - 1.0) <= detail::kWeightSumTol))
        throw std::invalid_argument("weights: entries must sum to 1 within 1e-12");
    for (double& v : w_) v /= sum;
}

bool pool_valid(const MeanSpec& spec) noexcept {
    return std::visit(detail::overloaded{
                          [](const PowerMean& m) { return m.p > 0.0 && m.p <= 1.0; },
                          [](const GeometricMean&) { return true; },
                          [](const FMean& m) {
                              if (const auto* pf = std::get_if<PowerF>(&m.f))
                                  return pf->p > 0.0 && pf->p <= 1.0;
                              return true;  // LogF
                          },
                      },
                      spec);
}

std::string describe(const MeanSpec& spec) {
    char buf[64];
    return std::visit(detail::overloaded{
                          [&](const PowerMean& m) {
                              std::snprintf(buf, sizeof buf, "power(p=%g)", m.p);
                              return std::string(buf);
                          },
                          [](const GeometricMean&) { return std::string("geometric"); },
                          [&](const FMean& m) {
                              if (const auto* pf = std::get_if<PowerF>(&m.f)) {
                                  std::snprintf(buf, sizeof buf, "fmean(power, p=%g)", pf->p);
                                  return std::string(buf);
                              }
                              return std::string("fmean(log)");
                          },
                      },
                      spec);
}

double generalized_mean(std::span<const double> x, const Weights& w, double p) {
    check_dimensions(x, w, "generalized_mean");
    check_finite_nonnegative(x, "generalized_mean");
    if (p == 0.0 || !std::isfinite(p))
        throw std::invalid_argument("generalized_mean: p must be finite and nonzero");
    if (p < 0.0) {
        for (double v : x)
            if (v == 0.0)
                throw std::invalid_argument("generalized_mean: zero entry with p < 0");
    }
    if (std::abs(p) < detail::kSmallPThreshold) {
        // sum_i w_i x_i^p = 1 + sum_i w_i expm1(p ln x_i) since sum_i w_i = 1;
        // keeps full precision while the sum collapses toward 1.
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (w[i] == 0.0) continue;
            acc += w[i] * std::expm1(p * std::log(x[i]));
        }
        return std::exp(std::log1p(acc) / p);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (w[i] == 0.0) continue;
        acc += w[i] * std::pow(x[i], p);
    }
    return std::pow(acc, 1.0 / p);
}

double geometric_mean(std::span<const double> x, const Weights& w) {
    check_dimensions(x, w, "geometric_mean");
    check_finite_nonnegative(x, "geometric_mean");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (w[i] == 0.0) continue;
        if (x[i] <= 0.0)
            throw std::invalid_argument(
                "geometric_mean: entries with positive weight must be positive");
        acc += w[i] * std::log(x[i]);
    }
    return std::exp(acc);
}

double f_apply(const FKind& f, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("fmean: input must be finite");
    return std::visit(detail::overloaded{
                          [&](const PowerF& pf) {
                              if (pf.p > 0.0 ? x < 0.0 : x <= 0.0)
                                  throw std::domain_error(
                                      "fmean: input outside the domain of x^p");
                              return std::pow(x, pf.p);
                          },
                          [&](const LogF&) {
                              if (x <= 0.0)
                                  throw std::domain_error("fmean: log generator needs x > 0");
                              return std::log(x);
                          },
                      },
                      f);
}

double f_invert(const FKind& f, double y) {
    return std::visit(detail::overloaded{
                          [&](const PowerF& pf) {
                              if (pf.p > 0.0 ? y < 0.0 : y <= 0.0)
                                  throw std::domain_error(
                                      "fmean: inverse argument outside the range of x^p");
                              return std::pow(y, 1.0 / pf.p);
                          },
                          [&](const LogF&) { return std::exp(y); },
                      },
                      f);
}

double f_derivative(const FKind& f, double x) {
    return std::visit(detail::overloaded{
                          [&](const PowerF& pf) { return pf.p * std::pow(x, pf.p - 1.0); },
                          [&](const LogF&) { return 1.0 / x; },
                      },
                      f);
}

double f_mean(std::span<const double> x, const Weights& w, const FKind& f) {
    check_dimensions(x, w, "f_mean");
    validate_fkind(f);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f_apply(f, x[i]);
    return f_invert(f, acc);
}

double mean_dispatch(std::span<const double> x, const Weights& w, const MeanSpec& spec) {
    return std::visit(
        detail::overloaded{
            [&](const PowerMean& m) { return generalized_mean(x, w, m.p); },
            [&](const GeometricMean&) { return geometric_mean(x, w); },
            [&](const FMean& m) { return f_mean(x, w, m.f); },
        },
        spec);
}

double concavity_probe(const MeanSpec& spec, const Weights& w, std::span<const double> x,
                       std::span<const double> y, double t) {
    if (x.size() != y.size())
        throw std::invalid_argument("concavity_probe: x/y dimension mismatch");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("concavity_probe: t must lie in [0, 1]");
    std::vector<double> blend(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) blend[i] = (1.0 - t) * x[i] + t * y[i];
    return mean_dispatch(blend, w, spec) -
           ((1.0 - t) * mean_dispatch(x, w, spec) + t * mean_dispatch(y, w, spec));
}

double superadditivity_gap(double p, std::span<const double> x, std::span<const double> y) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("superadditivity_gap: p must lie in (0, 1]");
    if (x.size() != y.size())
        throw std::invalid_argument("superadditivity_gap: x/y dimension mismatch");
    check_finite_nonnegative(x, "superadditivity_gap");
    check_finite_nonnegative(y, "superadditivity_gap");
    auto unweighted = [p](std::span<const double> v) {
        double acc = 0.0;
        for (double e : v) acc += std::pow(e, p);
        return std::pow(acc, 1.0 / p);
    };
    std::vector<double> sum(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + y[i];
    return unweighted(sum) - unweighted(x) - unweighted(y);
}

double homogeneity_gap(const MeanSpec& spec, const Weights& w, std::span<const double> x,
                       double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("homogeneity_gap: t must be positive and finite");
    std::vector<double> scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = t * x[i];
    return mean_dispatch(scaled, w, spec) - t * mean_dispatch(x, w, spec);
}

}  // namespace g3m
