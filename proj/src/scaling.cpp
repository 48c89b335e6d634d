#include "dicke/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dicke {

namespace {

std::string key_of(double spin, const std::string& name, double lambda) {
    std::ostringstream os;
    os.precision(17);
    os << spin << '|' << name << '|' << lambda;
    return os.str();
}

}  // namespace

void SweepTable::add(double spin, double lambda, const std::string& name, double value) {
    const std::string key = key_of(spin, name, lambda);
    if (index_.count(key)) {
        throw std::invalid_argument("SweepTable: duplicate record (S=" + std::to_string(spin) +
                                    ", lambda=" + std::to_string(lambda) + ", " + name + ")");
    }
    index_[key] = value;
    records_.push_back({spin, lambda, name, value});
}

std::vector<double> SweepTable::spins() const {
    std::set<double> s;
    for (const auto& r : records_) s.insert(r.spin);
    return {s.begin(), s.end()};
}

std::vector<std::string> SweepTable::names() const {
    std::set<std::string> s;
    for (const auto& r : records_) s.insert(r.name);
    return {s.begin(), s.end()};
}

SweepTable::Series SweepTable::series(double spin, const std::string& name) const {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records_) {
        if (r.name == name && std::abs(r.spin - spin) < 1e-12) pts.emplace_back(r.lambda, r.value);
    }
    std::sort(pts.begin(), pts.end());
    Series s;
    for (const auto& [l, v] : pts) {
        s.lambdas.push_back(l);
        s.values.push_back(v);
    }
    return s;
}

LocalSlopeCurve local_exponent(const SweepTable& table, const std::string& name, double spin,
                               CriticalSide side) {
    const SweepTable::Series full = table.series(spin, name);
    // one-sided series, ordered by |lambda - 1| ascending
    std::vector<std::pair<double, double>> pts;  // (log|lambda-1|, log|value|) keyed by lambda
    std::vector<double> lambdas;
    LocalSlopeCurve curve;
    const double sign_ref = [&]() {
        for (std::size_t i = 0; i < full.lambdas.size(); ++i) {
            const bool on_side = side == CriticalSide::below ? full.lambdas[i] < lambda_critical
                                                             : full.lambdas[i] > lambda_critical;
            if (on_side && full.values[i] != 0.0) return full.values[i] > 0.0 ? 1.0 : -1.0;
        }
        return 1.0;
    }();
    for (std::size_t i = 0; i < full.lambdas.size(); ++i) {
        const double l = full.lambdas[i];
        const bool on_side = side == CriticalSide::below ? l < lambda_critical : l > lambda_critical;
        if (!on_side) continue;
        const double v = full.values[i];
        if (v == 0.0 || v * sign_ref < 0.0) {
            curve.excluded_lambdas.push_back(l);
            continue;
        }
        pts.emplace_back(std::log(std::abs(l - lambda_critical)), std::log(std::abs(v)));
        lambdas.push_back(l);
    }
    if (pts.size() < 4) {
        throw std::invalid_argument("local_exponent: fewer than 4 usable points on the " +
                                    std::string(to_string(side)) + " side for " + name);
    }
    // series is sorted by lambda; centered differences in log|lambda-1|
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double slope =
            (pts[i + 1].second - pts[i - 1].second) / (pts[i + 1].first - pts[i - 1].first);
        curve.points.push_back({lambdas[i], slope});
    }
    return curve;
}

ExponentEstimate estimate_exponent(const SweepTable& table, const std::string& name, double spin,
                                   CriticalSide side, double window_min, double window_max) {
    ExponentEstimate est;
    est.name = name;
    est.side = side;
    est.spin = spin;
    est.window_min = window_min;
    est.window_max = window_max;
    est.curve = local_exponent(table, name, spin, side);

    std::vector<LocalSlopePoint> in_window;
    for (const auto& p : est.curve.points) {
        const double dist = std::abs(p.lambda - lambda_critical);
        if (dist >= window_min - 1e-12 && dist <= window_max + 1e-12) in_window.push_back(p);
    }
    if (in_window.size() < 2) {
        throw std::invalid_argument(
            "estimate_exponent: fewer than 2 local-slope points inside the window");
    }
    const auto nearest = std::min_element(
        in_window.begin(), in_window.end(), [](const LocalSlopePoint& a, const LocalSlopePoint& b) {
            return std::abs(a.lambda - lambda_critical) < std::abs(b.lambda - lambda_critical);
        });
    est.nearest_slope = nearest->slope;
    std::vector<double> dist, slope;
    for (const auto& p : in_window) {
        dist.push_back(std::abs(p.lambda - lambda_critical));
        slope.push_back(p.slope);
    }
    const LinearFit fit = linear_fit(dist, slope);
    est.exponent = fit.intercept;  // slope curve read at the critical point
    est.residual = fit.residual;
    return est;
}

LinearFit size_scaling_exponent(const std::map<double, double>& value_by_spin) {
    if (value_by_spin.size() < 3) {
        throw std::invalid_argument("size_scaling_exponent: needs >= 3 spin values");
    }
    std::vector<double> log_s, log_v;
    for (const auto& [s, v] : value_by_spin) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("size_scaling_exponent: nonpositive value " +
                                        std::to_string(v) + " at S = " + std::to_string(s));
        }
        log_s.push_back(std::log(s));
        log_v.push_back(std::log(v));
    }
    return linear_fit(log_s, log_v);
}

LinearFit size_scaling_exponent(const SweepTable& table, const std::string& name, double lambda) {
    std::map<double, double> by_spin;
    for (const auto& r : table.records()) {
        if (r.name == name && std::abs(r.lambda - lambda) < 1e-12) by_spin[r.spin] = r.value;
    }
    return size_scaling_exponent(by_spin);
}

ThermoExtrapolation extrapolate_thermodynamic(const std::map<double, double>& value_by_spin,
                                              double power) {
    if (value_by_spin.size() < 3) {
        throw std::invalid_argument("extrapolate_thermodynamic: needs >= 3 spin values");
    }
    std::vector<double> x, y;
    for (const auto& [s, v] : value_by_spin) {
        x.push_back(std::pow(1.0 / s, power));
        y.push_back(v);
    }
    const LinearFit f = linear_fit(x, y);
    return {f.intercept, f.slope, f.residual};
}

}  // namespace dicke
