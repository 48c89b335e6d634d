#include "dicke/correlations.hpp"

#include <stdexcept>

namespace dicke {

TwoQubitState two_qubit_reduced(const MomentSet& ms) {
    const double k = static_cast<double>(ms.qubit_count());
    if (ms.qubit_count() < 2) {
        throw std::invalid_argument("two_qubit_reduced: needs K = 2S >= 2 qubits");
    }
    const double norm4 = 4.0 * k * (k - 1.0);
    const double v_plus = (k * k - 2.0 * k + 4.0 * ms.mean_zz + 4.0 * ms.mean_z * (k - 1.0)) / norm4;
    const double v_minus = (k * k - 2.0 * k + 4.0 * ms.mean_zz - 4.0 * ms.mean_z * (k - 1.0)) / norm4;
    const double w = (k * k - 4.0 * ms.mean_zz) / norm4;
    const Complex x_plus = ((k - 1.0) * ms.mean_plus + ms.mean_anti) / (2.0 * k * (k - 1.0));
    const Complex x_minus = ((k - 1.0) * ms.mean_plus - ms.mean_anti) / (2.0 * k * (k - 1.0));
    const Complex u = ms.mean_plus2 / (k * (k - 1.0));

    TwoQubitState st;
    st.spin = ms.spin;
    st.data << v_plus, std::conj(x_plus), std::conj(x_plus), std::conj(u),
               x_plus, w, w, std::conj(x_minus),
               x_plus, w, w, std::conj(x_minus),
               u, x_minus, x_minus, v_minus;
    return st;
}

Eigen::Matrix2cd single_qubit_reduced(const MomentSet& ms) {
    TwoQubitState st = two_qubit_reduced(ms);
    Eigen::Matrix2cd q;
    // trace over either qubit of the two-qubit state
    q(0, 0) = st.data(0, 0) + st.data(1, 1);
    q(0, 1) = st.data(0, 2) + st.data(1, 3);
    q(1, 0) = st.data(2, 0) + st.data(3, 1);
    q(1, 1) = st.data(2, 2) + st.data(3, 3);
    return q;
}

Eigen::Matrix4cd partial_transpose_second(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd pt;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    pt(2 * i + j, 2 * k + l) = rho(2 * i + l, 2 * k + j);
    return pt;
}

double negativity(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd pt = partial_transpose_second(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt, Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double mu = es.eigenvalues()(i);
        neg += 0.5 * (std::abs(mu) - mu);
    }
    return neg;
}

double negativity(const TwoQubitState& state) {
    return negativity(state.data);
}

std::optional<double> spin_squeezing(const MomentSet& ms, SqueezingAxis axis) {
    const Variances var = variances(ms, /*normalized=*/false);
    double num = 0.0, den = 0.0;
    switch (axis) {
        case SqueezingAxis::x:
            num = var.x;
            den = ms.mean_y * ms.mean_y + ms.mean_z * ms.mean_z;
            break;
        case SqueezingAxis::y:
            num = var.y;
            den = ms.mean_x * ms.mean_x + ms.mean_z * ms.mean_z;
            break;
        case SqueezingAxis::z:
            num = var.z;
            den = ms.mean_x * ms.mean_x + ms.mean_y * ms.mean_y;
            break;
    }
    // no mean spin in the orthogonal plane (threshold relative to the S^2 scale)
    if (den <= 1e-24 * ms.spin * ms.spin) return std::nullopt;
    return 2.0 * ms.spin * num / den;
}

}  // namespace dicke
