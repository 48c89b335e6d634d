#include "dicke/observables.hpp"

#include <stdexcept>

namespace dicke {

Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
        throw std::invalid_argument("expectation: operator/state dimension mismatch");
    }
    // Tr[op rho] = sum_ij op(i,j) rho(j,i)
    return (op.transpose().cwiseProduct(rho.data)).sum();
}

MomentSet moments(const DensityMatrix& rho) {
    const SpinSector& sec = rho.sector;
    const int d = sec.dim;
    const double s = sec.spin;
    LadderCoefficients lc(sec);

    MomentSet ms;
    ms.spin = s;

    double sum_z = 0.0, sum_zz = 0.0, sum_pm = 0.0, sum_mp = 0.0;
    Complex sum_p(0.0, 0.0), sum_p2(0.0, 0.0), sum_anti(0.0, 0.0);
    for (int i = 0; i < d; ++i) {
        const double m = sec.m_of_index(i);
        const double p = rho.data(i, i).real();
        sum_z += m * p;
        sum_zz += m * m * p;
        sum_pm += lc.sp_sm_diag[i] * p;                      // <S_+S_->
        if (i + 1 < d) sum_mp += lc.raise[i] * lc.raise[i] * p;  // <S_-S_+>
        if (i + 1 < d) {
            const Complex r1 = rho.data(i, i + 1);
            sum_p += lc.raise[i] * r1;
            sum_anti += lc.raise[i] * (2.0 * m + 1.0) * r1;  // m_i + m_{i+1}
        }
        if (i + 2 < d) {
            sum_p2 += lc.raise[i + 1] * lc.raise[i] * rho.data(i, i + 2);
        }
    }

    ms.mean_z = sum_z;
    ms.mean_zz = sum_zz;
    ms.mean_plus = sum_p;
    ms.mean_plus2 = sum_p2;
    ms.mean_anti = sum_anti;
    ms.mean_x = sum_p.real();
    ms.mean_y = sum_p.imag();
    ms.mean_xx = 0.25 * (2.0 * sum_p2.real() + sum_pm + sum_mp);
    ms.mean_yy = 0.25 * (sum_pm + sum_mp - 2.0 * sum_p2.real());
    return ms;
}

Variances variances(const MomentSet& ms, bool normalized) {
    Variances v;
    v.x = ms.mean_xx - ms.mean_x * ms.mean_x;
    v.y = ms.mean_yy - ms.mean_y * ms.mean_y;
    v.z = ms.mean_zz - ms.mean_z * ms.mean_z;
    if (normalized) {
        const double s2 = ms.spin * ms.spin;
        v.x /= s2;
        v.y /= s2;
        v.z /= s2;
    }
    return v;
}

double purity(const ComplexMatrix& rho) {
    return rho.squaredNorm();  // Tr[rho^2] = ||rho||_F^2 for Hermitian rho
}

double purity(const DensityMatrix& rho) {
    return purity(rho.data);
}

}  // namespace dicke
