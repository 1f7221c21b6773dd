#pragma once
// Single-crossing-regime diagnostics: oscillatory-part extraction and
// turnaround detection on eigenstate correlator curves.

#include <optional>
#include <vector>

#include "mlgosc/correlators.hpp"

namespace mlgosc {

struct CorrelatorCurve {
    std::vector<double> omega_tau;  // strictly increasing
    std::vector<double> value;
    double secular_coefficient = 0.0;  // the removed tau^2 prefactor M_nn^2

    void validate() const;
};

// F_n(tau) - tau^2 M_nn^2 sampled on the grid (omega_tau values, omega from config).
CorrelatorCurve oscillatory_part(int n, const std::vector<double>& omega_tau_grid,
                                 const MatrixElementTable& table, const OscillatorConfig& config);

// First interior stationary point (discrete derivative sign change) refined
// by quadratic interpolation; empty when none lies in the sampled range.
std::optional<double> first_stationary_time(const CorrelatorCurve& curve);

// Turnaround: the first local MINIMUM of the oscillatory part, i.e. the point
// where the oscillatory excursion has fully reversed. For curves that touch
// zero again (|0>, |2> under delta coupling this happens at w*tau = pi) the
// zero-touch is the minimum. The single-crossing assumption is flagged
// plausible for windows shorter than this value. Empty when no minimum lies
// in the sampled range.
std::optional<double> turnaround_time(const CorrelatorCurve& curve);

// Convenience: oscillatory part on a default grid (step pi/400) wide enough
// to bracket the first minimum, then turnaround_time.
std::optional<double> turnaround_time(int n, const MatrixElementTable& table,
                                      const OscillatorConfig& config, double omega_tau_max = 7.0);

}  // namespace mlgosc
