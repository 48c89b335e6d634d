// Parameter sweeps over (S, lambda) cells: one steady state, its moments and
// correlation measures per cell, computed by a worker pool and assembled in a
// deterministic order (S major, lambda minor) independent of scheduling.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dicke/scaling.hpp"

namespace dicke {

enum class GridSpacing { linear, log };

struct LambdaGrid {
    double min = 0.05;
    double max = 2.0;
    int steps = 80;  // number of grid points
    GridSpacing spacing = GridSpacing::linear;

    std::vector<double> points() const;  // strictly increasing; validates
};

struct SweepConfig {
    std::vector<double> spins;
    LambdaGrid grid;
    double kappa = 1.0;
    int workers = 0;  // 0 -> hardware concurrency

    void validate() const;
};

struct SweepRow {
    double spin = 0.0;
    double lambda = 0.0;
    double sx = 0.0, sy = 0.0, sz = 0.0;              // normalized by S
    double var_x = 0.0, var_y = 0.0, var_z = 0.0;     // normalized by S^2
    double purity_full = 0.0;
    double purity_qubit = 0.0;
    double negativity = 0.0;
    double negativity_normalized = 0.0;  // per-S max over this sweep's grid
    double squeezing_x = 0.0, squeezing_y = 0.0, squeezing_z = 0.0;  // NaN if undefined
    double purity_2qubit = 0.0;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;  // sorted: spin major, lambda minor
};

SweepResult run_sweep(const SweepConfig& config);

// CSV with '#'-prefixed metadata header, comma delimiter, '.' decimal,
// %.17g values (round-trip exact).  Identical configs give byte-identical
// output regardless of the worker count.
void write_sweep_csv(std::ostream& os, const SweepResult& result);
void write_sweep_csv(const std::string& path, const SweepResult& result);

// Reads every numeric column of a sweep CSV into a table keyed by column name.
SweepTable read_sweep_csv(std::istream& is);
SweepTable read_sweep_csv(const std::string& path);

}  // namespace dicke
