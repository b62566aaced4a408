// g3m: swap quotes, slippage analytics, depth schedules, property
// verification, and the slippage/trade-size scaling experiment for
// generalized-mean market maker pools.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "g3m/analytics.hpp"
#include "g3m/io.hpp"
#include "g3m/scaling.hpp"
#include "g3m/verify.hpp"

namespace {

// exit codes: 0 ok, 1 failed check, 2 bad usage/config, 3 infeasible trade
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(std::span<const double> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += num(v[i]);
    }
    return out;
}

// "3" -> asset index; "3=1.25" -> index and amount. Assets are 1-based on
// the command line.
struct AssetArg {
    std::size_t index = 0;
    double amount = -1.0;  // < 0 when no amount was given
    bool has_amount() const { return amount >= 0.0; }
};

AssetArg parse_asset_arg(const std::string& text, const char* flag) {
    AssetArg arg;
    std::string index_part = text;
    if (auto eq = text.find('='); eq != std::string::npos) {
        index_part = text.substr(0, eq);
        const std::string amount_part = text.substr(eq + 1);
        std::size_t used = 0;
        arg.amount = std::stod(amount_part, &used);
        if (used != amount_part.size() || !(arg.amount > 0.0))
            throw std::invalid_argument(std::string(flag) +
                                        ": amount must be a positive decimal");
    }
    std::size_t used = 0;
    const long asset = std::stol(index_part, &used);
    if (used != index_part.size() || asset < 1)
        throw std::invalid_argument(std::string(flag) + ": asset must be a 1-based index");
    arg.index = static_cast<std::size_t>(asset - 1);
    return arg;
}

void check_asset_range(const g3m::Pool& pool, const AssetArg& arg, const char* flag) {
    if (arg.index >= pool.size())
        throw std::invalid_argument(std::string(flag) + ": asset index exceeds pool size");
}

int cmd_quote(const std::string& config_path, const std::string& in_spec,
              const std::string& out_spec) {
    const g3m::Pool pool = g3m::load_pool_config(config_path);
    const AssetArg in = parse_asset_arg(in_spec, "--in");
    const AssetArg out = parse_asset_arg(out_spec, "--out");
    check_asset_range(pool, in, "--in");
    check_asset_range(pool, out, "--out");
    if (!in.has_amount()) throw std::invalid_argument("--in: expected asset=amount");
    if (out.has_amount()) throw std::invalid_argument("--out: expected a bare asset index");

    std::vector<double> input(pool.size(), 0.0);
    input[in.index] = in.amount;
    g3m::TradeQuote quote = g3m::solve_output(pool, input, out.index);
    g3m::annotate_quote(pool, quote);

    std::cout << "amount_out: " << num(quote.trade.output[out.index]) << "\n"
              << "post_reserves: " << join(quote.post_reserves) << "\n"
              << "spot_rate: " << num(quote.spot_rate) << "\n"
              << "slippage: " << num(quote.slippage) << "\n"
              << "invariant_residual: " << num(quote.invariant_residual) << "\n";
    return kExitOk;
}

int cmd_slippage(const std::string& config_path, const std::string& in_spec,
                 const std::string& out_spec) {
    const g3m::Pool pool = g3m::load_pool_config(config_path);
    const AssetArg in = parse_asset_arg(in_spec, "--in");
    const AssetArg out = parse_asset_arg(out_spec, "--out");
    check_asset_range(pool, in, "--in");
    check_asset_range(pool, out, "--out");
    if (in.has_amount() == out.has_amount())
        throw std::invalid_argument("slippage: give the amount on exactly one side");

    g3m::TradeQuote quote;
    if (in.has_amount()) {
        std::vector<double> input(pool.size(), 0.0);
        input[in.index] = in.amount;
        quote = g3m::solve_output(pool, input, out.index);
    } else {
        std::vector<double> output(pool.size(), 0.0);
        output[out.index] = out.amount;
        quote = g3m::solve_input(pool, output, in.index);
    }
    g3m::annotate_quote(pool, quote);

    const double amount_in = quote.trade.input[in.index];
    const double amount_out = quote.trade.output[out.index];
    std::cout << "amount_in: " << num(amount_in) << "\n"
              << "amount_out: " << num(amount_out) << "\n"
              << "spot_rate: " << num(quote.spot_rate) << "\n"
              << "effective_price: " << num(amount_in / amount_out) << "\n"
              << "slippage: " << num(quote.slippage) << "\n";
    return kExitOk;
}

int cmd_schedule(double invariant, double shape, double eps) {
    const g3m::ScheduleParams params(invariant, shape);
    std::cout << "p: " << num(g3m::schedule_p(params, eps)) << "\n"
              << "c: " << num(g3m::schedule_exponent(shape)) << "\n"
              << "identity_residual: " << num(g3m::schedule_identity_residual(params, eps))
              << "\n";
    return kExitOk;
}

int cmd_verify(std::uint64_t seed, std::size_t cases, const std::string& config_path) {
    if (cases < 1) throw std::invalid_argument("verify: --cases must be at least 1");
    std::optional<g3m::Pool> extra;
    if (!config_path.empty()) extra = g3m::load_pool_config(config_path);

    g3m::VerifyOptions opts;
    opts.seed = seed;
    opts.cases = cases;
    opts.extra_pool = extra ? &*extra : nullptr;

    const auto results = g3m::run_property_suite(opts);
    bool all_passed = true;
    for (const auto& r : results) {
        if (r.passed()) {
            std::cout << "ok   " << r.name << ": " << r.cases << " cases\n";
        } else {
            all_passed = false;
            std::cout << "FAIL " << r.name << ": " << r.failures << "/" << r.cases
                      << " cases failed\n     first counterexample: " << r.counterexample
                      << "\n";
        }
    }
    return all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_experiment(double invariant, double shape, int k_min, int k_max, double tail,
                   const std::string& out_path) {
    g3m::ScalingConfig config{g3m::ScheduleParams(invariant, shape), k_min, k_max, tail};
    const g3m::ScalingReport report = g3m::run_scaling(config);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("experiment: cannot open '" + out_path + "' for writing");
    g3m::write_scaling_csv(report, out);
    out.close();
    if (!out) throw std::invalid_argument("experiment: failed writing '" + out_path + "'");

    constexpr double kSlipBand = 0.05, kInputBand = 0.05, kSlip0Band = 0.02;
    const bool slip_ok = std::abs(report.slope_slip + report.c_target) <= kSlipBand;
    const bool input_ok = std::abs(report.slope_input + report.c_target) <= kInputBand;
    const bool slip0_ok = std::abs(report.slope_slip0 + 1.0) <= kSlip0Band;

    std::cout << "rows: " << report.rows.size() << " -> " << out_path << "\n"
              << "c_target: " << num(report.c_target) << "\n"
              << "slope_S: " << num(report.slope_slip) << " (target " << num(-report.c_target)
              << " +/- " << kSlipBand << (slip_ok ? ", ok" : ", OUT OF BAND") << ")\n"
              << "slope_D: " << num(report.slope_input) << " (target " << num(-report.c_target)
              << " +/- " << kInputBand << (input_ok ? ", ok" : ", OUT OF BAND") << ")\n"
              << "slope_S0: " << num(report.slope_slip0) << " (target -1 +/- " << kSlip0Band
              << (slip0_ok ? ", ok" : ", OUT OF BAND") << ")\n";
    return (slip_ok && input_ok && slip0_ok) ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized-mean market maker pools: quotes, slippage, depth schedules, "
                 "and scaling experiments"};
    app.require_subcommand(1);

    std::string config_path, in_spec, out_spec;
    auto* quote = app.add_subcommand("quote", "solve a swap and print the full quote");
    quote->add_option("config", config_path, "pool config (JSON)")->required();
    quote->add_option("--in", in_spec, "input asset and amount, e.g. 1=5")->required();
    quote->add_option("--out", out_spec, "output asset index, e.g. 2")->required();

    auto* slip = app.add_subcommand("slippage", "spot rate and slippage for a swap");
    slip->add_option("config", config_path, "pool config (JSON)")->required();
    slip->add_option("--in", in_spec, "input asset, amount on this side to solve the payout")
        ->required();
    slip->add_option("--out", out_spec, "output asset, amount on this side to solve the input")
        ->required();

    double invariant = 4.0, shape = 4.0 / 3.0, eps = 0.00390625, tail = 0.5;
    auto* schedule = app.add_subcommand("schedule", "depth schedule p(eps) and exponent c(s)");
    schedule->add_option("--C", invariant, "pool level, requires 2 < C")
        ->capture_default_str();
    schedule->add_option("--s", shape, "shape, requires 1 < s < C/2")->capture_default_str();
    schedule->add_option("--eps", eps, "trade depth, requires 0 < eps < 1")
        ->capture_default_str();

    std::uint64_t seed = 42;
    std::size_t cases = 10000;
    auto* verify = app.add_subcommand("verify", "run the seeded property suite");
    verify->add_option("config", config_path, "optional pool config folded into the checks");
    verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
    verify->add_option("--cases", cases, "cases per property")->capture_default_str();

    int k_min = 4, k_max = 40;
    std::string csv_path = "scaling.csv";
    auto* experiment =
        app.add_subcommand("experiment", "slippage/trade-size scaling sweep over eps = 2^-k");
    experiment->add_option("--C", invariant, "pool level, requires 2 < C")
        ->capture_default_str();
    experiment->add_option("--s", shape, "shape, requires 1 < s < C/2")->capture_default_str();
    experiment->add_option("--kmin", k_min, "largest eps = 2^-kmin")->capture_default_str();
    experiment->add_option("--kmax", k_max, "smallest eps = 2^-kmax")->capture_default_str();
    experiment->add_option("--tail", tail, "fraction of smallest-eps points fitted")
        ->capture_default_str();
    experiment->add_option("--out", csv_path, "CSV output path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (quote->parsed()) return cmd_quote(config_path, in_spec, out_spec);
        if (slip->parsed()) return cmd_slippage(config_path, in_spec, out_spec);
        if (schedule->parsed()) return cmd_schedule(invariant, shape, eps);
        if (verify->parsed()) return cmd_verify(seed, cases, config_path);
        if (experiment->parsed())
            return cmd_experiment(invariant, shape, k_min, k_max, tail, csv_path);
    } catch (const g3m::InfeasibleTrade& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
