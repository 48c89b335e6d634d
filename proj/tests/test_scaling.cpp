#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "dicke/scaling.hpp"

using namespace dicke;

namespace {

// planted |lambda - 1|^p law on both sides of the critical point
SweepTable power_law_table(double p, double spin = 100.0) {
    SweepTable t;
    for (int k = 0; k < 60; ++k) {
        const double lambda = 0.02 + 0.033 * k;
        if (std::abs(lambda - 1.0) < 1e-6) continue;
        t.add(spin, lambda, "obs", std::pow(std::abs(lambda - 1.0), p));
    }
    return t;
}

}  // namespace

TEST_CASE("table rejects duplicate records") {
    SweepTable t;
    t.add(10.0, 0.5, "sz", -0.8);
    CHECK_THROWS_AS(t.add(10.0, 0.5, "sz", -0.7), std::invalid_argument);
    t.add(10.0, 0.6, "sz", -0.7);
    CHECK(t.series(10.0, "sz").lambdas.size() == 2);
}

TEST_CASE("local exponent of a planted power law is exact on the grid") {
    const SweepTable t = power_law_table(0.5);
    for (CriticalSide side : {CriticalSide::below, CriticalSide::above}) {
        const LocalSlopeCurve curve = local_exponent(t, "obs", 100.0, side);
        REQUIRE(curve.points.size() > 3);
        for (const auto& pt : curve.points) {
            CHECK(pt.slope == doctest::Approx(0.5).epsilon(1e-10));
        }
    }
}

TEST_CASE("local exponent of a constant is zero") {
    SweepTable t;
    for (int k = 0; k < 20; ++k) t.add(50.0, 0.1 + 0.04 * k, "c", 3.7);
    const LocalSlopeCurve curve = local_exponent(t, "c", 50.0, CriticalSide::below);
    for (const auto& pt : curve.points) CHECK(std::abs(pt.slope) < 1e-12);
}

TEST_CASE("sign changes are excluded and flagged") {
    SweepTable t;
    for (int k = 0; k < 12; ++k) {
        const double lambda = 0.3 + 0.05 * k;
        t.add(20.0, lambda, "v", lambda < 0.6 ? -1.0 : +2.0);
    }
    const LocalSlopeCurve curve = local_exponent(t, "v", 20.0, CriticalSide::below);
    CHECK(!curve.excluded_lambdas.empty());
}

TEST_CASE("too few points is an error") {
    SweepTable t;
    t.add(10.0, 0.8, "v", 1.0);
    t.add(10.0, 0.9, "v", 2.0);
    CHECK_THROWS_AS(local_exponent(t, "v", 10.0, CriticalSide::below), std::invalid_argument);
}

TEST_CASE("exponent estimate extrapolates the slope curve to the critical point") {
    const SweepTable t = power_law_table(0.37);
    const ExponentEstimate est =
        estimate_exponent(t, "obs", 100.0, CriticalSide::below, 0.05, 0.3);
    CHECK(est.exponent == doctest::Approx(0.37).epsilon(1e-10));
    CHECK(est.nearest_slope == doctest::Approx(0.37).epsilon(1e-10));
    CHECK(est.residual < 1e-10);
    CHECK(est.window_min == 0.05);
}

TEST_CASE("exponent estimate removes a linear window bias") {
    // local slope p + c|lambda-1| must read back p at the critical point
    SweepTable t;
    for (int k = 0; k < 60; ++k) {
        const double lambda = 0.02 + 0.016 * k;
        if (lambda >= 1.0) continue;
        const double d = std::abs(lambda - 1.0);
        // log v = p log d + (c/1) d  ->  d log v/d log d = p + c d
        t.add(10.0, lambda, "obs", std::pow(d, 0.5) * std::exp(0.8 * d));
    }
    const ExponentEstimate est = estimate_exponent(t, "obs", 10.0, CriticalSide::below, 0.05, 0.3);
    CHECK(est.exponent == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(est.nearest_slope > est.exponent);  // raw reading carries the bias
}

TEST_CASE("size scaling recovers planted exponents exactly") {
    std::map<double, double> vals;
    for (double s : {25.0, 50.0, 100.0, 200.0}) vals[s] = 3.0 / s;
    const LinearFit fit = size_scaling_exponent(vals);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);

    std::map<double, double> vals9;
    for (double s : {25.0, 50.0, 100.0, 200.0}) vals9[s] = 0.4 * std::pow(s, -0.9);
    CHECK(size_scaling_exponent(vals9).slope == doctest::Approx(-0.9).epsilon(1e-12));
}

TEST_CASE("size scaling rejects nonpositive values and short inputs") {
    std::map<double, double> bad = {{10.0, 1.0}, {20.0, -0.5}, {40.0, 0.2}};
    CHECK_THROWS_AS(size_scaling_exponent(bad), std::invalid_argument);
    std::map<double, double> few = {{10.0, 1.0}, {20.0, 0.5}};
    CHECK_THROWS_AS(size_scaling_exponent(few), std::invalid_argument);
}

TEST_CASE("thermodynamic extrapolation is exact for a + b/S") {
    std::map<double, double> vals;
    for (double s : {50.0, 100.0, 200.0, 400.0}) vals[s] = 0.46 + 3.1 / s;
    const ThermoExtrapolation ex = extrapolate_thermodynamic(vals);
    CHECK(ex.intercept == doctest::Approx(0.46).epsilon(1e-12));
    CHECK(ex.slope == doctest::Approx(3.1).epsilon(1e-10));
    CHECK(ex.residual < 1e-13);
    std::map<double, double> few = {{10.0, 1.0}, {20.0, 0.5}};
    CHECK_THROWS_AS(extrapolate_thermodynamic(few), std::invalid_argument);
}

TEST_CASE("extrapolation with an alternative power") {
    std::map<double, double> vals;
    for (double s : {50.0, 100.0, 200.0, 400.0}) vals[s] = 1.2 + 5.0 / std::sqrt(s);
    const ThermoExtrapolation ex = extrapolate_thermodynamic(vals, 0.5);
    CHECK(ex.intercept == doctest::Approx(1.2).epsilon(1e-10));
}

TEST_CASE("estimates are invariant under record reordering") {
    SweepTable fwd, rev;
    std::vector<std::pair<double, double>> rows;
    for (int k = 0; k < 30; ++k) {
        const double lambda = 0.05 + 0.03 * k;
        rows.emplace_back(lambda, 2.0 * std::pow(std::abs(lambda - 1.0), 0.8));
    }
    for (const auto& [l, v] : rows) fwd.add(77.0, l, "o", v);
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) rev.add(77.0, it->first, "o", it->second);
    const ExponentEstimate a = estimate_exponent(fwd, "o", 77.0, CriticalSide::below);
    const ExponentEstimate b = estimate_exponent(rev, "o", 77.0, CriticalSide::below);
    CHECK(a.exponent == b.exponent);
    CHECK(a.residual == b.residual);
}
