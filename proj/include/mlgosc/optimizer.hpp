#pragma once
// Coherent-state parameter search for maximal inequality violations at fixed
// measurement interval.

#include <complex>
#include <string>
#include <vector>

#include "mlgosc/inequalities.hpp"

namespace mlgosc {

struct SearchDomain {
    double x0_min = -4.0, x0_max = 4.0;
    double p0_min = -4.0, p0_max = 4.0;
    int grid_x = 41, grid_p = 41;      // >= 2 per axis
    double refine_tol = 1e-8;          // simplex convergence tolerance on the kernel value

    void validate() const;
};

struct OptimumRecord {
    std::complex<double> alpha{};
    double x0 = 0.0, p0 = 0.0;
    double best_kernel = 0.0;  // most negative violation margin, units time^2
    int kernel_index = 0;
    double tau_d_sq = 0.0;
    double omega_tau = 0.0;
    bool converged = true;
};

// Coarse grid scan over (x0, p0) followed by bounded Nelder-Mead refinement.
// Windows are the equal-interval chain starting at t1 = 0; the free window
// start is redundant because shifting it by t rotates every coherent state
// by e^{-i w t}, so the complex-alpha scan already covers it. For MLG3 the
// objective is the most negative of the four kernels; for MLG4 the most
// negative two-sided margin min(kernel, 2 tau_D^2 - kernel). Deterministic:
// grid candidates are ordered by (kernel, |alpha|, index) so ties go to the
// most classical state. Non-convergence is reported via converged=false with
// the best point so far.
OptimumRecord optimize_coherent(double tau, Family family, const SearchDomain& domain,
                                const MatrixElementTable& table, const OscillatorConfig& config);

struct SweepRow {
    double omega_tau = 0.0;
    OptimumRecord record{};
    std::string error;  // nonempty when this row failed; sweep continues
};

// One optimize_coherent record per tau, order preserved, per-row errors collected.
std::vector<SweepRow> sweep_grid(const std::vector<double>& tau_values, Family family,
                                 const SearchDomain& domain, const MatrixElementTable& table,
                                 const OscillatorConfig& config);

}  // namespace mlgosc
