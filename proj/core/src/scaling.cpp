#include "g3m/scaling.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace g3m {

namespace {

constexpr const char* kCsvHeader = "eps,p,delta1,S_p,S_0,identity_residual";

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double fit_loglog_slope(std::span<const std::pair<double, double>> points,
                        double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw std::invalid_argument("fit_loglog_slope: tail_fraction must lie in (0, 1]");
    for (const auto& [eps, value] : points) {
        if (!(eps > 0.0) || !(value > 0.0))
            throw std::invalid_argument("fit_loglog_slope: points must be positive");
    }
    const auto n_tail = static_cast<std::size_t>(
        std::ceil(static_cast<double>(points.size()) * tail_fraction));
    if (n_tail < 2)
        throw std::invalid_argument("fit_loglog_slope: need at least 2 tail points");
    const auto tail = points.subspan(points.size() - n_tail);

    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [eps, value] : tail) {
        mean_x += std::log(eps);
        mean_y += std::log(value);
    }
    mean_x /= static_cast<double>(n_tail);
    mean_y /= static_cast<double>(n_tail);

    double sxy = 0.0, sxx = 0.0;
    for (const auto& [eps, value] : tail) {
        const double dx = std::log(eps) - mean_x;
        sxy += dx * (std::log(value) - mean_y);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

ScalingReport run_scaling(const ScalingConfig& config) {
    if (config.k_min < 1)
        throw std::invalid_argument("run_scaling: grid must stay below eps = 1 (k_min >= 1)");
    if (config.k_max < config.k_min)
        throw std::invalid_argument("run_scaling: k_max must not precede k_min");
    const int count = config.k_max - config.k_min + 1;
    if (count < 8) throw std::invalid_argument("run_scaling: grid needs at least 8 points");
    if (!(config.tail_fraction > 0.0 && config.tail_fraction <= 1.0))
        throw std::invalid_argument("run_scaling: tail_fraction must lie in (0, 1]");

    const double level = config.params.invariant;  // reserves pinned at R1 = R2 = C

    ScalingReport report;
    report.rows.reserve(static_cast<std::size_t>(count));
    for (int k = config.k_min; k <= config.k_max; ++k) {
        ScalingRow row;
        row.eps = std::ldexp(1.0, -k);
        row.p = schedule_p(config.params, row.eps);
        row.delta1 = input_for_eps(row.p, level, level, row.eps);
        row.slip_p = slippage_power(row.p, level, level, level, row.eps);
        row.slip_0 = slippage_geometric(level, level, level, row.eps);
        row.identity_residual = schedule_identity_residual(config.params, row.eps);
        if (!(row.p > 0.0 && row.p <= 1.0) || !(row.delta1 > 0.0) ||
            !(std::abs(row.identity_residual) <= 1e-9)) {
            throw std::runtime_error("run_scaling: row invariant violated at eps = " +
                                     format_value(row.eps));
        }
        report.rows.push_back(row);
    }

    std::vector<std::pair<double, double>> pts(report.rows.size());
    auto fit = [&](auto pick) {
        for (std::size_t i = 0; i < report.rows.size(); ++i)
            pts[i] = {report.rows[i].eps, pick(report.rows[i])};
        return fit_loglog_slope(pts, config.tail_fraction);
    };
    report.slope_slip = fit([](const ScalingRow& r) { return std::abs(r.slip_p); });
    report.slope_input = fit([](const ScalingRow& r) { return r.delta1; });
    report.slope_slip0 = fit([](const ScalingRow& r) { return std::abs(r.slip_0); });
    report.c_target = schedule_exponent(config.params.s);
    return report;
}

void write_scaling_csv(const ScalingReport& report, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const ScalingRow& row : report.rows) {
        out << format_value(row.eps) << ',' << format_value(row.p) << ','
            << format_value(row.delta1) << ',' << format_value(row.slip_p) << ','
            << format_value(row.slip_0) << ',' << format_value(row.identity_residual) << '\n';
    }
}

std::vector<ScalingRow> read_scaling_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("scaling csv: missing or malformed header");
    std::vector<ScalingRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string field;
        double values[6];
        for (double& v : values) {
            if (!std::getline(fields, field, ','))
                throw std::runtime_error("scaling csv: short row");
            char* end = nullptr;
            v = std::strtod(field.c_str(), &end);
            if (end == field.c_str() || *end != '\0')
                throw std::runtime_error("scaling csv: malformed number '" + field + "'");
        }
        if (std::getline(fields, field, ','))
            throw std::runtime_error("scaling csv: too many fields");
        rows.push_back({values[0], values[1], values[2], values[3], values[4], values[5]});
    }
    return rows;
}

}  // namespace g3m
