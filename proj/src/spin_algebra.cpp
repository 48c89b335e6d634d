#include "dicke/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

SpinSector build_sector(double spin) {
    if (!(spin > 0.0) || !std::isfinite(spin)) {
        throw std::invalid_argument("build_sector: spin must be positive, got " +
                                    std::to_string(spin));
    }
    const double two_s = 2.0 * spin;
    if (std::abs(two_s - std::round(two_s)) > 1e-9) {
        throw std::invalid_argument("build_sector: spin must be a half-integer, got " +
                                    std::to_string(spin));
    }
    SpinSector sec;
    sec.spin = std::round(two_s) / 2.0;
    sec.dim = static_cast<int>(std::lround(two_s)) + 1;
    return sec;
}

LadderCoefficients::LadderCoefficients(const SpinSector& sec) : sector(sec) {
    const int d = sec.dim;
    const double s = sec.spin;
    raise.resize(std::max(d - 1, 0));
    sp_sm_diag = RealVector::Zero(d);
    for (int i = 0; i + 1 < d; ++i) {
        const double m = sec.m_of_index(i);
        raise[i] = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
        sp_sm_diag[i + 1] = raise[i] * raise[i];
    }
}

SpinOperatorSet build_operators(const SpinSector& sector) {
    const int d = sector.dim;
    LadderCoefficients lc(sector);

    SpinOperatorSet ops;
    ops.sector = sector;
    ops.s_plus = ComplexMatrix::Zero(d, d);
    ops.s_minus = ComplexMatrix::Zero(d, d);
    ops.sz = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) ops.sz(i, i) = sector.m_of_index(i);
    for (int i = 0; i + 1 < d; ++i) {
        ops.s_plus(i + 1, i) = lc.raise[i];
        ops.s_minus(i, i + 1) = lc.raise[i];
    }
    ops.sx = 0.5 * (ops.s_plus + ops.s_minus);
    ops.sy = Complex(0.0, -0.5) * (ops.s_plus - ops.s_minus);
    return ops;
}

double log_ladder_power_coefficient(const LogFactorialTable& lf, double spin, double m, int n) {
    // c_n(m)^2 = (S+m)! / (S+m-n)! * (S-m+n)! / (S-m)!
    const auto up = static_cast<std::size_t>(std::lround(spin + m));
    const auto dn = static_cast<std::size_t>(std::lround(spin - m));
    CompensatedDouble r = lf(up);
    r -= lf(up - static_cast<std::size_t>(n));
    r += lf(dn + static_cast<std::size_t>(n));
    r -= lf(dn);
    return 0.5 * r.value();
}

double ladder_power_coefficient(double spin, double m, int n) {
    if (n < 0) throw std::invalid_argument("ladder_power_coefficient: n must be >= 0");
    if (m < -spin - 1e-9 || m > spin + 1e-9) {
        throw std::invalid_argument("ladder_power_coefficient: m outside [-S, S]");
    }
    if (n == 0) return 1.0;
    if (m - n < -spin - 1e-9) return 0.0;
    LogFactorialTable lf(static_cast<std::size_t>(std::lround(2.0 * spin)));
    return std::exp(log_ladder_power_coefficient(lf, spin, m, n));
}

ComplexMatrix lower_left(const LadderCoefficients& lc, const ComplexMatrix& x) {
    const int d = lc.sector.dim;
    ComplexMatrix out(d, x.cols());
    out.topRows(d - 1).noalias() = lc.raise.asDiagonal() * x.bottomRows(d - 1);
    out.row(d - 1).setZero();
    return out;
}

ComplexMatrix raise_left(const LadderCoefficients& lc, const ComplexMatrix& x) {
    const int d = lc.sector.dim;
    ComplexMatrix out(d, x.cols());
    out.bottomRows(d - 1).noalias() = lc.raise.asDiagonal() * x.topRows(d - 1);
    out.row(0).setZero();
    return out;
}

ComplexMatrix lower_right(const LadderCoefficients& lc, const ComplexMatrix& x) {
    const int d = lc.sector.dim;
    ComplexMatrix out(x.rows(), d);
    out.rightCols(d - 1).noalias() = x.leftCols(d - 1) * lc.raise.asDiagonal();
    out.col(0).setZero();
    return out;
}

ComplexMatrix raise_right(const LadderCoefficients& lc, const ComplexMatrix& x) {
    const int d = lc.sector.dim;
    ComplexMatrix out(x.rows(), d);
    out.leftCols(d - 1).noalias() = x.rightCols(d - 1) * lc.raise.asDiagonal();
    out.col(d - 1).setZero();
    return out;
}

}  // namespace dicke
