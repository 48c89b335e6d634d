// Log-space combinatorics helpers.
//
// Factorial-heavy expressions in this library (steady-state normalization,
// ladder-operator powers, coherent-state binomials) are evaluated as sums and
// differences of log-factorials and only exponentiated at the end.  Plain
// double log-factorials lose ~1e-12 absolute accuracy once the values reach
// 1e4, which is not good enough for the 1e-8 residual contracts downstream,
// so the tables and the exponent arithmetic run in compensated (double-double)
// precision.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace dicke {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.  Enough of a double-double
// to add exactly-rounded terms without losing the low bits; not a general
// arithmetic type.
struct CompensatedDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr CompensatedDouble() = default;
    constexpr CompensatedDouble(double v) : hi(v), lo(0.0) {}
    CompensatedDouble(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }

    CompensatedDouble& operator+=(const CompensatedDouble& other) {
        // two-sum of the high parts, low parts folded into the error term
        double s = hi + other.hi;
        double bb = s - hi;
        double err = (hi - (s - bb)) + (other.hi - bb);
        err += lo + other.lo;
        double v = s + err;
        lo = err - (v - s);
        hi = v;
        return *this;
    }
    CompensatedDouble& operator-=(const CompensatedDouble& other) {
        return *this += CompensatedDouble(-other.hi, -other.lo);
    }
    friend CompensatedDouble operator+(CompensatedDouble a, const CompensatedDouble& b) {
        a += b;
        return a;
    }
    friend CompensatedDouble operator-(CompensatedDouble a, const CompensatedDouble& b) {
        a -= b;
        return a;
    }
};

// log(n!) for n = 0..n_max, each entry accumulated in compensated precision.
// Intended use: build once per spin sector size, share read-only.
class LogFactorialTable {
  public:
    explicit LogFactorialTable(std::size_t n_max) {
        table_.reserve(n_max + 1);
        CompensatedDouble acc;
        table_.push_back(acc);  // log 0! = 0
        for (std::size_t k = 1; k <= n_max; ++k) {
            acc += CompensatedDouble(std::log(static_cast<double>(k)));
            table_.push_back(acc);
        }
    }

    std::size_t max_n() const { return table_.size() - 1; }

    const CompensatedDouble& operator()(std::size_t n) const { return table_[n]; }

    double log_factorial(std::size_t n) const { return table_[n].value(); }

    // log C(n, k); requires k <= n <= max_n().
    double log_binomial(std::size_t n, std::size_t k) const {
        CompensatedDouble r = table_[n];
        r -= table_[k];
        r -= table_[n - k];
        return r.value();
    }

  private:
    std::vector<CompensatedDouble> table_;
};

// log(sum_i exp(log_terms[i])) without overflow.  Empty input -> -inf.
template <typename Range>
double log_sum_exp(const Range& log_terms) {
    double max_term = -std::numeric_limits<double>::infinity();
    for (double t : log_terms) {
        if (t > max_term) max_term = t;
    }
    if (!std::isfinite(max_term)) return max_term;
    double sum = 0.0;
    for (double t : log_terms) sum += std::exp(t - max_term);
    return max_term + std::log(sum);
}

}  // namespace dicke
