#include "dicke/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dicke/correlations.hpp"
#include "dicke/observables.hpp"
#include "dicke/steady_state.hpp"
#include "dicke/version.hpp"

namespace dicke {

std::vector<double> LambdaGrid::points() const {
    if (steps < 1) throw std::invalid_argument("lambda grid: needs at least one point");
    if (!(max >= min)) throw std::invalid_argument("lambda grid: max < min");
    if (steps > 1 && !(max > min)) throw std::invalid_argument("lambda grid: degenerate range");
    if (spacing == GridSpacing::log && !(min > 0.0)) {
        throw std::invalid_argument("lambda grid: log spacing needs min > 0");
    }
    std::vector<double> pts(static_cast<std::size_t>(steps));
    if (steps == 1) {
        pts[0] = min;
        return pts;
    }
    for (int k = 0; k < steps; ++k) {
        const double f = static_cast<double>(k) / (steps - 1);
        pts[static_cast<std::size_t>(k)] =
            spacing == GridSpacing::linear
                ? min + f * (max - min)
                : std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
    }
    return pts;
}

void SweepConfig::validate() const {
    if (spins.empty()) throw std::invalid_argument("sweep: empty spin list");
    for (double s : spins) (void)build_sector(s);
    if (!(kappa > 0.0)) throw std::invalid_argument("sweep: kappa must be > 0");
    (void)grid.points();
    if (workers < 0) throw std::invalid_argument("sweep: negative worker count");
}

namespace {

SweepRow compute_cell(double spin, double lambda, double kappa) {
    const ModelParams params = make_params(spin, lambda, kappa);
    const DensityMatrix rho = steady_state_of(params);
    const MomentSet ms = moments(rho);
    const Variances var = variances(ms, /*normalized=*/true);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    SweepRow row;
    row.spin = spin;
    row.lambda = lambda;
    row.sx = ms.mean_x / spin;
    row.sy = ms.mean_y / spin;
    row.sz = ms.mean_z / spin;
    row.var_x = var.x;
    row.var_y = var.y;
    row.var_z = var.z;
    row.purity_full = purity(rho);
    if (ms.qubit_count() >= 2) {
        const TwoQubitState two = two_qubit_reduced(ms);
        const Eigen::Matrix2cd one = single_qubit_reduced(ms);
        row.purity_qubit = (one * one).trace().real();
        row.purity_2qubit = (two.data * two.data).trace().real();
        row.negativity = negativity(two);
    } else {
        row.purity_qubit = nan;
        row.purity_2qubit = nan;
        row.negativity = nan;
    }
    const auto sq = [&](SqueezingAxis ax) {
        const auto v = spin_squeezing(ms, ax);
        return v ? *v : nan;
    };
    row.squeezing_x = sq(SqueezingAxis::x);
    row.squeezing_y = sq(SqueezingAxis::y);
    row.squeezing_z = sq(SqueezingAxis::z);
    row.negativity_normalized = nan;  // filled after the gather
    return row;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    const std::vector<double> lambdas = config.grid.points();
    const std::size_t n_lambda = lambdas.size();
    const std::size_t n_cells = config.spins.size() * n_lambda;

    SweepResult result;
    result.config = config;
    result.rows.resize(n_cells);

    unsigned n_workers = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                            : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(n_cells));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= n_cells || failed.load()) break;
            const double spin = config.spins[cell / n_lambda];
            const double lambda = lambdas[cell % n_lambda];
            try {
                result.rows[cell] = compute_cell(spin, lambda, config.kappa);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error_message = e.what();
                failed.store(true);
                break;
            }
        }
    };

    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("sweep failed: " + error_message);

    // per-S normalized negativity over this sweep's grid
    for (std::size_t si = 0; si < config.spins.size(); ++si) {
        double max_neg = 0.0;
        for (std::size_t li = 0; li < n_lambda; ++li) {
            const double n = result.rows[si * n_lambda + li].negativity;
            if (std::isfinite(n)) max_neg = std::max(max_neg, n);
        }
        for (std::size_t li = 0; li < n_lambda; ++li) {
            SweepRow& row = result.rows[si * n_lambda + li];
            row.negativity_normalized =
                max_neg > 0.0 ? row.negativity / max_neg : std::numeric_limits<double>::quiet_NaN();
        }
    }
    return result;
}

namespace {

constexpr const char* kColumns =
    "S,lambda,sx,sy,sz,var_x,var_y,var_z,purity_full,purity_qubit,negativity,"
    "negativity_normalized,squeezing_x,squeezing_y,squeezing_z,purity_2qubit";

std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    const auto& cfg = result.config;
    os << "# dickesim sweep v" << kVersion << "\n";
    os << "# kappa=" << fmt_g17(cfg.kappa) << " (omega = 2*lambda*kappa)\n";
    os << "# spins=";
    for (std::size_t i = 0; i < cfg.spins.size(); ++i) {
        os << (i ? "," : "") << fmt_g17(cfg.spins[i]);
    }
    os << "\n";
    os << "# lambda_grid min=" << fmt_g17(cfg.grid.min) << " max=" << fmt_g17(cfg.grid.max)
       << " steps=" << cfg.grid.steps
       << " spacing=" << (cfg.grid.spacing == GridSpacing::linear ? "linear" : "log") << "\n";
    os << "# conventions: spin components normalized by S, variances by S^2; "
          "negativity_normalized uses the per-S maximum over this grid\n";
    os << kColumns << "\n";
    for (const auto& r : result.rows) {
        os << fmt_g17(r.spin) << ',' << fmt_g17(r.lambda) << ',' << fmt_g17(r.sx) << ','
           << fmt_g17(r.sy) << ',' << fmt_g17(r.sz) << ',' << fmt_g17(r.var_x) << ','
           << fmt_g17(r.var_y) << ',' << fmt_g17(r.var_z) << ',' << fmt_g17(r.purity_full) << ','
           << fmt_g17(r.purity_qubit) << ',' << fmt_g17(r.negativity) << ','
           << fmt_g17(r.negativity_normalized) << ',' << fmt_g17(r.squeezing_x) << ','
           << fmt_g17(r.squeezing_y) << ',' << fmt_g17(r.squeezing_z) << ','
           << fmt_g17(r.purity_2qubit) << "\n";
    }
}

void write_sweep_csv(const std::string& path, const SweepResult& result) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_sweep_csv: cannot open " + path);
    write_sweep_csv(os, result);
    if (!os) throw std::runtime_error("write_sweep_csv: write failure on " + path);
}

SweepTable read_sweep_csv(std::istream& is) {
    std::string line;
    std::vector<std::string> header;
    SweepTable table;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tok;
        if (header.empty()) {
            while (std::getline(ss, tok, ',')) header.push_back(tok);
            if (header.size() < 2 || header[0] != "S" || header[1] != "lambda") {
                throw std::runtime_error("read_sweep_csv: unexpected header");
            }
            continue;
        }
        std::vector<double> vals;
        while (std::getline(ss, tok, ',')) vals.push_back(std::strtod(tok.c_str(), nullptr));
        if (vals.size() != header.size()) {
            throw std::runtime_error("read_sweep_csv: ragged row");
        }
        for (std::size_t c = 2; c < vals.size(); ++c) {
            if (std::isfinite(vals[c])) table.add(vals[0], vals[1], header[c], vals[c]);
        }
    }
    return table;
}

SweepTable read_sweep_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_sweep_csv: cannot open " + path);
    return read_sweep_csv(is);
}

}  // namespace dicke
