// Critical-exponent extraction from sweep tables: local log-log slopes
// against |lambda - 1|, system-size scaling against S, and 1/S thermodynamic
// extrapolation.  The critical coupling is fixed at lambda_c = 1 by the
// model; it is never fitted.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "dicke/fit.hpp"

namespace dicke {

inline constexpr double lambda_critical = 1.0;

struct SweepRecord {
    double spin = 0.0;
    double lambda = 0.0;
    std::string name;
    double value = 0.0;
};

// Unique (S, lambda, name) triples; series retrievable sorted by lambda.
class SweepTable {
  public:
    void add(double spin, double lambda, const std::string& name, double value);

    std::vector<double> spins() const;
    std::vector<std::string> names() const;

    struct Series {
        std::vector<double> lambdas;
        std::vector<double> values;
    };
    Series series(double spin, const std::string& name) const;

    const std::vector<SweepRecord>& records() const { return records_; }

  private:
    std::vector<SweepRecord> records_;
    std::map<std::string, double> index_;  // "S|name|lambda" -> value (dupe guard)
};

enum class CriticalSide { below, above };

inline const char* to_string(CriticalSide s) {
    return s == CriticalSide::below ? "below" : "above";
}

struct LocalSlopePoint {
    double lambda = 0.0;
    double slope = 0.0;
};

struct LocalSlopeCurve {
    std::vector<LocalSlopePoint> points;
    std::vector<double> excluded_lambdas;  // sign changes / zeros
};

// Centered-difference d log|value| / d log|lambda - 1| on the side's grid.
// Needs >= 4 usable points on the chosen side.
LocalSlopeCurve local_exponent(const SweepTable& table, const std::string& name, double spin,
                               CriticalSide side);

struct ExponentEstimate {
    std::string name;
    CriticalSide side = CriticalSide::below;
    double spin = 0.0;
    // local-slope curve extrapolated linearly in |lambda - lambda_c| to the
    // critical point, over the window points (removes the O(|lambda-1|)
    // window-position bias of any single reading)
    double exponent = 0.0;
    double window_min = 0.0, window_max = 0.0;
    double residual = 0.0;  // rms residual of that linear fit
    double nearest_slope = 0.0;  // raw local slope at the in-window point nearest lambda_c
    LocalSlopeCurve curve;
};

// Summarizes the local-slope curve inside window_min <= |lambda-1| <= window_max.
ExponentEstimate estimate_exponent(const SweepTable& table, const std::string& name, double spin,
                                   CriticalSide side, double window_min = 0.05,
                                   double window_max = 0.3);

// Least-squares slope of log(value) vs log(S) at fixed lambda; throws on
// nonpositive values.
LinearFit size_scaling_exponent(const SweepTable& table, const std::string& name, double lambda);
LinearFit size_scaling_exponent(const std::map<double, double>& value_by_spin);

struct ThermoExtrapolation {
    double intercept = 0.0;  // S -> infinity estimate
    double slope = 0.0;
    double residual = 0.0;
};

// Linear fit of value against 1/S^power (default power 1); needs >= 3 points.
ThermoExtrapolation extrapolate_thermodynamic(const std::map<double, double>& value_by_spin,
                                              double power = 1.0);

}  // namespace dicke
