#pragma once
// Modified temporal correlators <F^2> over a measurement window, dwell times,
// and the map to standard two-time correlators.

#include <complex>

#include "mlgosc/coupling.hpp"

namespace mlgosc {

enum class Exactness { Spectral, CosApproximation };

// A real correlator value (units time^2) with a rigorous bound on the dropped
// spectral tail and enough metadata to validate downstream combinations.
struct CorrelatorValue {
    double value = 0.0;
    double tail_estimate = 0.0;
    TimeWindow window{};
    CouplingKind coupling = CouplingKind::Delta;
    Exactness exactness = Exactness::Spectral;
};

struct CorrelatorElement {
    std::complex<double> value{};
    double tail_estimate = 0.0;
};

enum class DwellMethod { WindowPi, Spectral };

struct DwellTime {
    double tau_d_sq = 0.0;  // units time^2
    DwellMethod method = DwellMethod::Spectral;
};

// <m|F^2|n> = sum_k M_mk M_kn I_kn I_mk. For delta coupling the k sum is
// extended past the table extent until its rigorous tail bound clears
// config.truncation.tail_tol (relative); Gaussian sums stop at the extent.
// Throws TruncationError when the bound cannot be met, except in the
// non-analytic small-window regime omega*tau < 1e-3 where the value is
// returned with the enlarged tail_estimate instead.
CorrelatorElement f12sq_element(int m, int n, const TimeWindow& window,
                                const MatrixElementTable& table, const OscillatorConfig& config);

// <psi|F^2|psi> for a normalized state; real up to roundoff by hermiticity.
CorrelatorValue f12sq_expectation(const StateVector& state, const TimeWindow& window,
                                  const MatrixElementTable& table, const OscillatorConfig& config);

// Eigenstate closed form tau^2 M_nn^2 + (2/w^2) sum_{k != n} M_nk^2
// (1-cos(w tau (n-k)))/(n-k)^2; depends only on the window length.
CorrelatorValue f12sq_eigenstate_closed(int n, double tau, const MatrixElementTable& table,
                                        const OscillatorConfig& config);

// Closed form for the normalized p|1> state under the cos(w(t-s)) correlator
// approximation: (1 + 2 w^2 t^2 + 2 w t sin(2 w t) - cos(2 w t))/(8 w^2).
// Distinct from the exact spectral value for the same state; the exactness
// label records which route produced a value.
CorrelatorValue f12sq_p1_closed(double tau, const OscillatorConfig& config);

// WindowPi: <F^2> over a window of length pi/omega. Spectral:
// (pi/omega)^2 sum_n |c_n|^2 M_nn^2. The two agree exactly for any even
// coupling because every off-diagonal time kernel vanishes at w*tau = pi.
DwellTime dwell_time_sq(const StateVector& state, const MatrixElementTable& table,
                        const OscillatorConfig& config, DwellMethod method);

// C_12 = 1 - 2 <F^2>/<tau_D^2>. Exact for the free particle, short-time
// approximation for the oscillator. Throws NumericalError when the dwell
// time is below tolerance.
double standard_correlator_map(const CorrelatorValue& f12sq, const DwellTime& dwell);

}  // namespace mlgosc
