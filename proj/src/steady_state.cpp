#include "dicke/steady_state.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace dicke {

namespace {

void require_positive_lambda(const ModelParams& params, const char* who) {
    if (!(params.kappa > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": kappa must be > 0");
    }
    if (!(params.lambda() > 0.0)) {
        throw std::invalid_argument(std::string(who) +
                                    ": lambda = 0 has no closed-form eta; the steady state is the "
                                    "dissipative dark state (see steady_state_of)");
    }
}

// Terms of D in compensated log space; max kept separately for the final
// log-sum-exp.
double log_d_impl(const ModelParams& params, const LogFactorialTable& lf) {
    const int two_s = params.sector.qubit_count();
    const double log_g = std::log(params.g_abs());

    std::vector<CompensatedDouble> terms;
    terms.reserve(two_s + 1);
    double max_term = -std::numeric_limits<double>::infinity();
    for (int m = 0; m <= two_s; ++m) {
        CompensatedDouble t = lf(static_cast<std::size_t>(two_s + m + 1));
        t += lf(static_cast<std::size_t>(m));
        t += lf(static_cast<std::size_t>(m));
        t -= lf(static_cast<std::size_t>(two_s - m));
        t -= lf(static_cast<std::size_t>(2 * m + 1));
        t += CompensatedDouble(-2.0 * static_cast<double>(m) * log_g);
        terms.push_back(t);
        max_term = std::max(max_term, t.value());
    }
    double sum = 0.0;
    for (const auto& t : terms) sum += std::exp((t - CompensatedDouble(max_term)).value());
    return max_term + std::log(sum);
}

}  // namespace

double log_normalization_d(const ModelParams& params) {
    require_positive_lambda(params, "log_normalization_d");
    LogFactorialTable lf(static_cast<std::size_t>(2 * params.sector.qubit_count() + 2));
    return log_d_impl(params, lf);
}

double normalization_d(const ModelParams& params) {
    return std::exp(log_normalization_d(params));
}

ComplexMatrix eta_matrix(const ModelParams& params) {
    require_positive_lambda(params, "eta_matrix");
    const SpinSector& sec = params.sector;
    const int d = sec.dim;
    const double s = sec.spin;
    const double log_g = std::log(params.g_abs());

    LogFactorialTable lf(static_cast<std::size_t>(2 * sec.qubit_count() + 2));
    const CompensatedDouble half_log_d(0.5 * log_d_impl(params, lf));

    // i^n phase cycle from (g*)^{-n} with g* = -i|g|
    const Complex phase[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

    ComplexMatrix eta = ComplexMatrix::Zero(d, d);
    for (int col = 0; col < d; ++col) {
        const double m = sec.m_of_index(col);
        const auto up = static_cast<std::size_t>(std::lround(s + m));
        const auto dn = static_cast<std::size_t>(std::lround(s - m));
        for (int n = 0; n <= col; ++n) {
            // log of c_n(m) / (|g|^n sqrt(D)), assembled in compensated precision
            CompensatedDouble log_mag = lf(up);
            log_mag -= lf(up - static_cast<std::size_t>(n));
            log_mag += lf(dn + static_cast<std::size_t>(n));
            log_mag -= lf(dn);
            log_mag = CompensatedDouble(0.5 * log_mag.hi, 0.5 * log_mag.lo);
            log_mag -= CompensatedDouble(static_cast<double>(n) * log_g);
            log_mag -= half_log_d;
            eta(col - n, col) = phase[n % 4] * std::exp(log_mag.value());
        }
    }
    return eta;
}

DensityMatrix steady_state_of(const ModelParams& params) {
    if (!(params.kappa > 0.0)) {
        throw std::invalid_argument("steady_state_of: kappa must be > 0");
    }
    const SpinSector& sec = params.sector;
    if (params.lambda() == 0.0) {
        return dicke_projector(sec, -sec.spin);
    }
    ComplexMatrix eta = eta_matrix(params);
    DensityMatrix rho{ComplexMatrix::Zero(sec.dim, sec.dim), sec};
    rho.data.selfadjointView<Eigen::Lower>().rankUpdate(eta);
    rho.data.triangularView<Eigen::StrictlyUpper>() = rho.data.adjoint();
    return rho;
}

DensityMatrix dual_steady_state(const ModelParams& params) {
    DensityMatrix primal = steady_state_of(params);
    DensityMatrix dual{primal.data.conjugate().reverse(), primal.sector};
    return dual;
}

void write_steady_state_dump(std::ostream& os, const DensityMatrix& rho,
                             const ModelParams& params) {
    const std::uint64_t dim = static_cast<std::uint64_t>(rho.dim());
    const double header[4] = {params.sector.spin, params.lambda(), params.omega, params.kappa};
    os.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
    os.write(reinterpret_cast<const char*>(header), sizeof(header));
    for (int i = 0; i < rho.dim(); ++i) {
        for (int j = 0; j < rho.dim(); ++j) {
            const double re_im[2] = {rho.data(i, j).real(), rho.data(i, j).imag()};
            os.write(reinterpret_cast<const char*>(re_im), sizeof(re_im));
        }
    }
    if (!os) throw std::runtime_error("write_steady_state_dump: stream failure");
}

void write_steady_state_dump(const std::string& path, const DensityMatrix& rho,
                             const ModelParams& params) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_steady_state_dump: cannot open " + path);
    write_steady_state_dump(os, rho, params);
}

DensityMatrix read_steady_state_dump(std::istream& is, ModelParams* params_out) {
    std::uint64_t dim = 0;
    double header[4] = {0, 0, 0, 0};
    is.read(reinterpret_cast<char*>(&dim), sizeof(dim));
    is.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!is || dim == 0 || dim > (1u << 20)) {
        throw std::runtime_error("read_steady_state_dump: bad header");
    }
    SpinSector sec = build_sector(header[0]);
    if (static_cast<std::uint64_t>(sec.dim) != dim) {
        throw std::runtime_error("read_steady_state_dump: dim/spin mismatch");
    }
    DensityMatrix rho{ComplexMatrix(sec.dim, sec.dim), sec};
    for (int i = 0; i < sec.dim; ++i) {
        for (int j = 0; j < sec.dim; ++j) {
            double re_im[2];
            is.read(reinterpret_cast<char*>(re_im), sizeof(re_im));
            rho.data(i, j) = Complex(re_im[0], re_im[1]);
        }
    }
    if (!is) throw std::runtime_error("read_steady_state_dump: truncated data");
    if (params_out) {
        params_out->sector = sec;
        params_out->kappa = header[3];
        params_out->omega = header[2];
    }
    return rho;
}

DensityMatrix read_steady_state_dump(const std::string& path, ModelParams* params_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_steady_state_dump: cannot open " + path);
    return read_steady_state_dump(is, params_out);
}

}  // namespace dicke
