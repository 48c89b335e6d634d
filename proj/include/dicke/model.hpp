// Parameters of the driven collective-decay model
//   d rho/dt = i w [rho, S_x] + (kappa/S)(2 S_- rho S_+ - S_+S_- rho - rho S_+S_-).
//
// kappa sets the unit of time; lambda = omega / (2 kappa) is the single
// dimensionless coupling, critical at lambda = 1.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dicke/spin_algebra.hpp"

namespace dicke {

struct ModelParams {
    double omega = 0.0;  // drive frequency, >= 0
    double kappa = 1.0;  // collective decay rate, > 0
    SpinSector sector;

    double lambda() const { return omega / (2.0 * kappa); }
    double spin() const { return sector.spin; }

    // g = i omega S / (2 kappa), the drive-to-decay ratio entering the
    // closed-form steady state; purely imaginary for a real drive, |g| = lambda S.
    Complex g() const { return Complex(0.0, 0.5 * omega * sector.spin / kappa); }
    double g_abs() const { return lambda() * sector.spin; }
};

inline ModelParams make_params(double spin, double lambda, double kappa = 1.0) {
    if (!(kappa > 0.0)) throw std::invalid_argument("make_params: kappa must be > 0");
    if (lambda < 0.0) throw std::invalid_argument("make_params: lambda must be >= 0");
    ModelParams p;
    p.sector = build_sector(spin);
    p.kappa = kappa;
    p.omega = 2.0 * lambda * kappa;
    return p;
}

}  // namespace dicke
