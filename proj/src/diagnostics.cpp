#include "mlgosc/diagnostics.hpp"

#include <cmath>

namespace mlgosc {

namespace {

// Quadratic refinement of an extremum bracketed by samples (x0,y0),(x1,y1),(x2,y2).
double refine_extremum(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double curv = (d2 - d1) / (0.5 * (x2 - x0));
    if (curv == 0.0) return x1;
    const double mid1 = 0.5 * (x0 + x1), mid2 = 0.5 * (x1 + x2);
    // derivative is linear through (mid1, d1), (mid2, d2); its zero is the extremum
    const double x = mid1 - d1 * (mid2 - mid1) / (d2 - d1);
    return std::clamp(x, x0, x2);
}

}  // namespace

void CorrelatorCurve::validate() const {
    if (omega_tau.size() != value.size())
        throw std::invalid_argument("curve: grid and value sizes differ");
    for (size_t i = 0; i < omega_tau.size(); ++i) {
        if (!std::isfinite(omega_tau[i]) || !std::isfinite(value[i]))
            throw std::invalid_argument("curve: values must be finite");
        if (i > 0 && omega_tau[i] <= omega_tau[i - 1])
            throw std::invalid_argument("curve: omega_tau must be strictly increasing");
    }
}

CorrelatorCurve oscillatory_part(int n, const std::vector<double>& omega_tau_grid,
                                 const MatrixElementTable& table,
                                 const OscillatorConfig& config) {
    config.validate();
    CorrelatorCurve curve;
    const double mnn = table(n, n);
    curve.secular_coefficient = mnn * mnn;
    curve.omega_tau = omega_tau_grid;
    curve.value.reserve(omega_tau_grid.size());
    for (double wt : omega_tau_grid) {
        const double tau = wt / config.omega;
        const CorrelatorValue f = f12sq_eigenstate_closed(n, tau, table, config);
        curve.value.push_back(f.value - tau * tau * curve.secular_coefficient);
    }
    curve.validate();
    return curve;
}

std::optional<double> first_stationary_time(const CorrelatorCurve& curve) {
    curve.validate();
    if (curve.omega_tau.size() < 3) throw std::invalid_argument("curve needs >= 3 samples");
    const auto& x = curve.omega_tau;
    const auto& y = curve.value;
    for (size_t i = 0; i + 2 < x.size(); ++i) {
        const double d1 = y[i + 1] - y[i];
        const double d2 = y[i + 2] - y[i + 1];
        if (d1 == 0.0 && d2 == 0.0) continue;
        if (d1 * d2 < 0.0 || (d1 != 0.0 && d2 == 0.0) || (d1 == 0.0 && d2 != 0.0))
            return refine_extremum(x[i], y[i], x[i + 1], y[i + 1], x[i + 2], y[i + 2]);
    }
    return std::nullopt;
}

std::optional<double> turnaround_time(const CorrelatorCurve& curve) {
    curve.validate();
    if (curve.omega_tau.size() < 3) throw std::invalid_argument("curve needs >= 3 samples");
    const auto& x = curve.omega_tau;
    const auto& y = curve.value;
    for (size_t i = 0; i + 2 < x.size(); ++i) {
        const double d1 = y[i + 1] - y[i];
        const double d2 = y[i + 2] - y[i + 1];
        if (d1 < 0.0 && d2 >= 0.0)  // falling then rising: local minimum
            return refine_extremum(x[i], y[i], x[i + 1], y[i + 1], x[i + 2], y[i + 2]);
    }
    return std::nullopt;
}

std::optional<double> turnaround_time(int n, const MatrixElementTable& table,
                                      const OscillatorConfig& config, double omega_tau_max) {
    const double step = M_PI / 400.0;
    std::vector<double> grid;
    for (double wt = step; wt <= omega_tau_max + 0.5 * step; wt += step) grid.push_back(wt);
    return turnaround_time(oscillatory_part(n, grid, table, config));
}

}  // namespace mlgosc
