#include "g3m/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>

#include "g3m/analytics.hpp"

namespace g3m {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string vec(std::span<const double> v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += num(v[i]);
    }
    return out + ")";
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_);
    }
    bool chance(double prob) { return uniform(0.0, 1.0) < prob; }

    std::vector<double> vector(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (double& e : v) e = log_uniform(lo, hi);
        return v;
    }

    Weights weights(std::size_t n, bool allow_zero = false) {
        std::vector<double> raw(n);
        double sum = 0.0;
        for (double& e : raw) {
            e = uniform(0.5, 1.5);
            sum += e;
        }
        if (allow_zero && n > 2 && chance(0.25)) {
            raw[index(n)] = 0.0;
            sum = 0.0;
            for (double e : raw) sum += e;
        }
        for (double& e : raw) e /= sum;
        return Weights(std::move(raw));
    }

    // Pool-valid spec; power exponents kept away from the tiny-p regime so
    // the quasi-arithmetic route stays comparable.
    MeanSpec pool_spec() {
        switch (index(4)) {
            case 0: return PowerMean{uniform(0.05, 1.0)};
            case 1: return GeometricMean{};
            case 2: return FMean{LogF{}};
            default: return FMean{PowerF{uniform(0.05, 1.0)}};
        }
    }

    Pool pool(std::size_t n) {
        return Pool(vector(n, 0.5, 50.0), weights(n), pool_spec());
    }

private:
    std::mt19937_64 gen_;
};

using CaseFn = std::function<std::optional<std::string>(Rng&, std::size_t)>;

PropertyResult run_cases(const std::string& name, std::uint64_t seed, std::size_t cases,
                         const CaseFn& one_case) {
    PropertyResult result;
    result.name = name;
    Rng rng(seed ^ std::hash<std::string>{}(name));
    for (std::size_t i = 0; i < cases; ++i) {
        ++result.cases;
        if (auto counterexample = one_case(rng, i)) {
            ++result.failures;
            if (result.counterexample.empty()) result.counterexample = *counterexample;
        }
    }
    return result;
}

MeanSpec cycle_spec(std::size_t i) {
    static const double kPs[] = {0.1, 0.3, 0.5, 0.9, 1.0};
    switch (i % 8) {
        case 0: case 1: case 2: case 3: case 4: return PowerMean{kPs[i % 8]};
        case 5: return GeometricMean{};
        case 6: return FMean{LogF{}};
        default: return FMean{PowerF{kPs[i % 5]}};
    }
}

// Independent check of the closed-form solver: bisects the trading value on
// the payout interval [0, R_j).
double bisect_output(const Pool& pool, const std::vector<double>& input, std::size_t j) {
    const auto r = pool.reserves();
    std::vector<double> post(r.begin(), r.end());
    for (std::size_t k = 0; k < post.size(); ++k) post[k] += input[k];
    auto value_at = [&](double out) {
        post[j] = r[j] - out;
        return mean_dispatch(post, pool.weights(), pool.spec());
    };
    double lo = 0.0, hi = r[j] * (1.0 - 1e-15);
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (value_at(mid) >= pool.invariant())
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Input sized to stay clearly inside bounded pools and to keep payouts away
// from the round-off-dominated shallow end.
double pick_input(Rng& rng, const Pool& pool, std::size_t i, std::size_t j) {
    double base = pool.reserves()[i];
    if (auto cap = max_buy_size(pool, i, j); cap && std::isfinite(*cap))
        base = std::min(base, 0.6 * *cap);
    return rng.uniform(0.2, 1.0) * base;
}

std::vector<double> input_vector(std::size_t n, std::size_t i, double amount) {
    std::vector<double> in(n, 0.0);
    in[i] = amount;
    return in;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(const VerifyOptions& opts) {
    if (opts.cases < 1) throw std::invalid_argument("verify: cases must be at least 1");
    std::vector<PropertyResult> results;
    const std::uint64_t seed = opts.seed;
    const std::size_t cases = opts.cases;
    const Pool* extra = opts.extra_pool;

    results.push_back(run_cases(
        "idempotence", seed, cases, [](Rng& rng, std::size_t i) -> std::optional<std::string> {
            static const double kLevels[] = {1e-6, 1.0, 1e6};
            const double c = kLevels[i % 3];
            const std::size_t n = 2 + rng.index(4);
            const std::vector<double> x(n, c);
            const Weights w = rng.weights(n);
            const MeanSpec spec = cycle_spec(rng.index(8));
            const double m = mean_dispatch(x, w, spec);
            if (std::abs(m - c) <= 1e-12 * c) return std::nullopt;
            return "spec=" + describe(spec) + " c=" + num(c) + " mean=" + num(m);
        }));

    results.push_back(run_cases(
        "bounds", seed, cases, [](Rng& rng, std::size_t i) -> std::optional<std::string> {
            const std::size_t n = 2 + rng.index(4);
            const auto x = rng.vector(n, 1e-3, 1e3);
            const Weights w = rng.weights(n, /*allow_zero=*/true);
            const MeanSpec spec = cycle_spec(i);
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (w[k] == 0.0) continue;
                lo = std::min(lo, x[k]);
                hi = std::max(hi, x[k]);
            }
            const double m = mean_dispatch(x, w, spec);
            if (m >= lo * (1.0 - 1e-12) && m <= hi * (1.0 + 1e-12)) return std::nullopt;
            return "spec=" + describe(spec) + " x=" + vec(x) + " w=" + vec(w.values()) +
                   " mean=" + num(m);
        }));

    results.push_back(run_cases(
        "monotonicity", seed, cases, [](Rng& rng, std::size_t i) -> std::optional<std::string> {
            const std::size_t n = 2 + rng.index(4);
            const auto x = rng.vector(n, 1e-2, 1e2);
            const Weights w = rng.weights(n);
            const MeanSpec spec = cycle_spec(i);
            const double before = mean_dispatch(x, w, spec);
            auto bumped = x;
            const std::size_t k = rng.index(n);
            bumped[k] += rng.log_uniform(1e-6, 1.0) * x[k];
            const double after = mean_dispatch(bumped, w, spec);
            if (after >= before * (1.0 - 1e-12)) return std::nullopt;
            return "spec=" + describe(spec) + " x=" + vec(x) + " k=" + num(double(k)) +
                   " before=" + num(before) + " after=" + num(after);
        }));

    results.push_back(run_cases(
        "power-mean ordering", seed, cases,
        [](Rng& rng, std::size_t) -> std::optional<std::string> {
            const std::size_t n = 2 + rng.index(4);
            const auto x = rng.vector(n, 1e-2, 1e2);
            const Weights w = rng.weights(n);
            double p = rng.uniform(-2.0, 2.0), q = rng.uniform(-2.0, 2.0);
            if (p == 0.0 || q == 0.0) return std::nullopt;
            if (p > q) std::swap(p, q);
            const double mp = generalized_mean(x, w, p);
            const double mq = generalized_mean(x, w, q);
            const double m0 = geometric_mean(x, w);
            const double tol = 1e-12 * std::max({1.0, mp, mq});
            if (mp > mq + tol) return "x=" + vec(x) + " p=" + num(p) + " q=" + num(q) +
                                      " mu_p=" + num(mp) + " mu_q=" + num(mq);
            // geometric mean sits between the negative- and positive-p means
            if (p < 0.0 && m0 < mp - tol) return "x=" + vec(x) + " p=" + num(p) +
                                                 " mu_p=" + num(mp) + " mu_0=" + num(m0);
            if (q > 0.0 && m0 > mq + tol) return "x=" + vec(x) + " q=" + num(q) +
                                                 " mu_q=" + num(mq) + " mu_0=" + num(m0);
            return std::nullopt;
        }));

    results.push_back(run_cases(
        "p->0 convergence", seed, cases, [](Rng& rng, std::size_t i) -> std::optional<std::string> {
            static const double kPs[] = {1e-2, 1e-3, 1e-4, 1e-6};
            const std::size_t n = (i % 2 == 0) ? 2 : 5;
            const auto x = rng.vector(n, 0.1, 10.0);
            const Weights w = rng.weights(n);
            const double m0 = geometric_mean(x, w);
            double gaps[4];
            for (int k = 0; k < 4; ++k)
                gaps[k] = std::abs(generalized_mean(x, w, kPs[k]) - m0) / m0;
            if (gaps[3] > 1e-4)
                return "x=" + vec(x) + " gap(1e-6)=" + num(gaps[3]);
            for (int k = 0; k < 3; ++k) {
                if (gaps[k + 1] > gaps[k])
                    return "x=" + vec(x) + " gap(p=" + num(kPs[k]) + ")=" + num(gaps[k]) +
                           " < gap(p=" + num(kPs[k + 1]) + ")=" + num(gaps[k + 1]);
            }
            return std::nullopt;
        }));

    results.push_back(run_cases(
        "concavity", seed, cases, [](Rng& rng, std::size_t i) -> std::optional<std::string> {
            const MeanSpec spec = cycle_spec(i);
            const bool needs_positive = std::holds_alternative<GeometricMean>(spec) ||
                                        (std::holds_alternative<FMean>(spec) &&
                                         std::holds_alternative<LogF>(std::get<FMean>(spec).f));
            const std::size_t n = 2 + rng.index(4);
            auto draw = [&] {
                auto v = rng.vector(n, 1e-2, 1e2);
                if (!needs_positive && rng.chance(0.1)) v[rng.index(n)] = 0.0;
                return v;
            };
            const auto x = draw(), y = draw();
            const Weights w = rng.weights(n);
            const double t = rng.uniform(0.0, 1.0);
            const double probe = concavity_probe(spec, w, x, y, t);
            const double scale = std::max(
                {1.0, mean_dispatch(x, w, spec), mean_dispatch(y, w, spec)});
            if (probe >= -1e-12 * scale) return std::nullopt;
            return "spec=" + describe(spec) + " x=" + vec(x) + " y=" + vec(y) +
                   " t=" + num(t) + " probe=" + num(probe);
        }));

    results.push_back(run_cases(
        "superadditivity", seed, cases, [](Rng& rng, std::size_t i) -> std::optional<std::string> {
            static const double kPs[] = {0.1, 0.3, 0.5, 0.9, 1.0};
            const double p = kPs[i % 5];
            const std::size_t n = 2 + rng.index(4);
            auto draw = [&] {
                auto v = rng.vector(n, 1e-2, 1e2);
                if (rng.chance(0.15)) v[rng.index(n)] = 0.0;
                return v;
            };
            const auto x = draw(), y = draw();
            const double gap = superadditivity_gap(p, x, y);
            std::vector<double> sum(n);
            for (std::size_t k = 0; k < n; ++k) sum[k] = x[k] + y[k];
            double norm = 0.0;
            for (double e : sum) norm += std::pow(e, p);
            const double scale = std::max(1.0, std::pow(norm, 1.0 / p));
            if (gap >= -1e-12 * scale) return std::nullopt;
            return "p=" + num(p) + " x=" + vec(x) + " y=" + vec(y) + " gap=" + num(gap);
        }));

    results.push_back(run_cases(
        "homogeneity", seed, cases, [](Rng& rng, std::size_t i) -> std::optional<std::string> {
            const MeanSpec spec = cycle_spec(i);
            const std::size_t n = 2 + rng.index(4);
            const auto x = rng.vector(n, 1e-2, 1e2);
            const Weights w = rng.weights(n);
            const double t = rng.log_uniform(1.0 / 64.0, 64.0);
            const double gap = homogeneity_gap(spec, w, x, t);
            const double bound = 1e-12 * t * mean_dispatch(x, w, spec);
            if (std::abs(gap) <= bound) return std::nullopt;
            return "spec=" + describe(spec) + " x=" + vec(x) + " t=" + num(t) +
                   " gap=" + num(gap);
        }));

    results.push_back(run_cases(
        "f-mean agreement", seed, cases, [](Rng& rng, std::size_t) -> std::optional<std::string> {
            const std::size_t n = 2 + rng.index(4);
            const auto x = rng.vector(n, 1e-2, 1e2);
            const Weights w = rng.weights(n);
            const double p = rng.uniform(0.01, 3.0);
            const double via_f = f_mean(x, w, PowerF{p});
            const double direct = generalized_mean(x, w, p);
            if (std::abs(via_f - direct) > 1e-12 * direct)
                return "p=" + num(p) + " x=" + vec(x) + " fmean=" + num(via_f) +
                       " power=" + num(direct);
            const double via_log = f_mean(x, w, LogF{});
            const double geo = geometric_mean(x, w);
            if (std::abs(via_log - geo) > 1e-12 * geo)
                return "x=" + vec(x) + " fmean(log)=" + num(via_log) + " geometric=" + num(geo);
            return std::nullopt;
        }));

    results.push_back(run_cases(
        "invariant preservation", seed, cases,
        [extra](Rng& rng, std::size_t i) -> std::optional<std::string> {
            Pool pool = (i == 0 && extra) ? *extra : rng.pool(2 + rng.index(2));
            for (int step = 0; step < 8; ++step) {
                const std::size_t in = rng.index(pool.size());
                std::size_t out = rng.index(pool.size());
                if (out == in) out = (out + 1) % pool.size();
                TradeQuote quote;
                try {
                    quote = solve_output(
                        pool, input_vector(pool.size(), in, pick_input(rng, pool, in, out)), out);
                } catch (const InfeasibleTrade&) {
                    continue;
                }
                pool = execute_trade(pool, quote.trade);
                const double level = mean_dispatch(pool.reserves(), pool.weights(), pool.spec());
                if (std::abs(level - pool.invariant()) > 1e-9 * pool.invariant())
                    return "spec=" + describe(pool.spec()) + " step=" + num(double(step)) +
                           " level=" + num(level) + " C=" + num(pool.invariant());
            }
            return std::nullopt;
        }));

    results.push_back(run_cases(
        "solver round trip", seed, cases,
        [extra](Rng& rng, std::size_t i) -> std::optional<std::string> {
            const Pool pool = (i == 0 && extra) ? *extra : rng.pool(2 + rng.index(2));
            const std::size_t in = rng.index(pool.size());
            std::size_t out = rng.index(pool.size());
            if (out == in) out = (out + 1) % pool.size();
            const double amount_in = pick_input(rng, pool, in, out);
            const TradeQuote fwd =
                solve_output(pool, input_vector(pool.size(), in, amount_in), out);
            const TradeQuote back = solve_input(pool, fwd.trade.output, in);
            const double recovered = back.trade.input[in];
            if (std::abs(recovered - amount_in) <= 1e-9 * amount_in) return std::nullopt;
            return "spec=" + describe(pool.spec()) + " R=" + vec(pool.reserves()) +
                   " in=" + num(amount_in) + " recovered=" + num(recovered);
        }));

    results.push_back(run_cases(
        "bisection oracle", seed, cases, [](Rng& rng, std::size_t) -> std::optional<std::string> {
            const Pool pool = rng.pool(2);
            const std::size_t in = rng.index(2), out = 1 - in;
            const auto input = input_vector(2, in, pick_input(rng, pool, in, out));
            const double engine = solve_output(pool, input, out).trade.output[out];
            const double oracle = bisect_output(pool, input, out);
            if (std::abs(engine - oracle) <= 1e-9 * engine) return std::nullopt;
            return "spec=" + describe(pool.spec()) + " R=" + vec(pool.reserves()) +
                   " engine=" + num(engine) + " bisect=" + num(oracle);
        }));

    results.push_back(run_cases(
        "quote monotonicity", seed, cases,
        [extra](Rng& rng, std::size_t i) -> std::optional<std::string> {
            const Pool pool = (i == 0 && extra) ? *extra : rng.pool(2 + rng.index(2));
            const std::size_t in = rng.index(pool.size());
            std::size_t out = rng.index(pool.size());
            if (out == in) out = (out + 1) % pool.size();
            const double small = 0.5 * pick_input(rng, pool, in, out);
            const double large = small * rng.uniform(1.1, 2.0);
            const double pay_small =
                solve_output(pool, input_vector(pool.size(), in, small), out).trade.output[out];
            const double pay_large =
                solve_output(pool, input_vector(pool.size(), in, large), out).trade.output[out];
            if (pay_large <= pay_small)
                return "spec=" + describe(pool.spec()) + " small=" + num(small) +
                       " large=" + num(large) + " pay_small=" + num(pay_small) +
                       " pay_large=" + num(pay_large);
            // average rate must not improve with size (concavity)
            if (pay_large / large > (pay_small / small) * (1.0 + 1e-12))
                return "spec=" + describe(pool.spec()) + " rate_small=" + num(pay_small / small) +
                       " rate_large=" + num(pay_large / large);
            return std::nullopt;
        }));

    results.push_back(run_cases(
        "spec coincidence", seed, cases, [](Rng& rng, std::size_t i) -> std::optional<std::string> {
            const std::size_t n = 2 + rng.index(2);
            const auto reserves = rng.vector(n, 0.5, 50.0);
            const Weights w = rng.weights(n);
            const bool log_pair = (i % 2 == 0);
            const double p = rng.uniform(0.05, 1.0);
            const Pool direct(reserves, w, log_pair ? MeanSpec{GeometricMean{}}
                                                    : MeanSpec{PowerMean{p}});
            const Pool via_f(reserves, w, log_pair ? MeanSpec{FMean{LogF{}}}
                                                   : MeanSpec{FMean{PowerF{p}}});
            if (std::abs(direct.invariant() - via_f.invariant()) >
                1e-12 * direct.invariant())
                return "levels differ: " + num(direct.invariant()) + " vs " +
                       num(via_f.invariant());
            const std::size_t in = rng.index(n);
            std::size_t out = rng.index(n);
            if (out == in) out = (out + 1) % n;
            // sized to keep the payout well away from the shallow end, where
            // a 1e-12 comparison would drown in round-off
            double base = direct.reserves()[in];
            if (auto cap = max_buy_size(direct, in, out); cap && std::isfinite(*cap))
                base = std::min(base, 0.5 * *cap);
            const auto input = input_vector(n, in, rng.uniform(0.5, 1.0) * base);
            const double pay_direct = solve_output(direct, input, out).trade.output[out];
            const double pay_f = solve_output(via_f, input, out).trade.output[out];
            if (std::abs(pay_direct - pay_f) <= 1e-12 * pay_direct) return std::nullopt;
            return std::string(log_pair ? "log" : "power") + " pair, R=" + vec(reserves) +
                   " pay=" + num(pay_direct) + " pay_f=" + num(pay_f);
        }));

    results.push_back(run_cases(
        "feasibility boundary", seed, cases,
        [](Rng& rng, std::size_t) -> std::optional<std::string> {
            const std::size_t n = 2 + rng.index(2);
            const double p = rng.uniform(0.05, 1.0);
            Pool pool(rng.vector(n, 0.5, 50.0), rng.weights(n), PowerMean{p});
            const std::size_t in = rng.index(n);
            std::size_t out = rng.index(n);
            if (out == in) out = (out + 1) % n;
            const auto cap = max_buy_size(pool, in, out);
            if (!cap) return std::string("power pool reported unbounded liquidity");
            // the infeasibility boundary is where the adjusted reserves
            // exhaust the pool level: sum_{k != out} w_k (R_k + D_k)^p = C^p
            const auto& w = pool.weights();
            const auto r = pool.reserves();
            auto bracket = [&](double amount_in) {
                double rest = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == out) continue;
                    rest += w[k] * std::pow(r[k] + (k == in ? amount_in : 0.0), p);
                }
                return std::pow(pool.invariant(), p) - rest;
            };
            if (!(bracket(*cap * (1.0 - 1e-9)) > 0.0))
                return "cap=" + num(*cap) + " already exhausted just inside the boundary";
            if (!(bracket(*cap * (1.0 + 1e-9)) < 0.0))
                return "cap=" + num(*cap) + " still solvable just outside the boundary";
            try {
                solve_output(pool, input_vector(n, in, *cap * (1.0 + 1e-9)), out);
                return "cap=" + num(*cap) + " accepted just outside the boundary";
            } catch (const InfeasibleTrade&) {
                return std::nullopt;
            }
        }));

    return results;
}

}  // namespace g3m
