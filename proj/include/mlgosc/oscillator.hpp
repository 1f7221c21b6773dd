#pragma once
// Oscillator conventions, Fock-basis states and ladder algebra.
//
// Units: hbar = m = 1, positions measured in oscillator lengths. The
// delta-coupling strength L is absorbed into the matrix elements so that
// L*psi_0(0)^2 = 1/sqrt(pi); the overall coupling scale cancels in every
// inequality, so this is a pure normalization choice. It is the unique
// choice consistent with the ground-state closed form implemented in
// correlators.hpp (see docs/NOTES.md).

#include <complex>

#include <Eigen/Dense>

#include "mlgosc/common.hpp"

namespace mlgosc {

struct TruncationPolicy {
    int max_level = 40;      // Fock cutoff
    double tail_tol = 1e-8;  // relative tolerance for dropped series tails

    void validate() const;
};

struct OscillatorConfig {
    double omega = 1.0;  // angular frequency, > 0
    TruncationPolicy truncation{};

    void validate() const;
};

// Fock-basis amplitudes c_0..c_N.
struct StateVector {
    Eigen::VectorXcd amplitudes;

    int max_index() const { return static_cast<int>(amplitudes.size()) - 1; }
    double norm_sq() const { return amplitudes.squaredNorm(); }
    double mean_level() const;  // <n>
    double mean_x(double omega) const;
    double mean_p(double omega) const;

    static StateVector fock(int n, int max_level);
};

// psi_n(0): 0 for odd n; pi^{-1/4} (-1)^{n/2} sqrt((n-1)!!/n!!) for even n.
double psi_at_origin(int n);

// Phase-space map alpha = (sqrt(omega) x0 + i p0/sqrt(omega)) / sqrt(2).
std::complex<double> coherent_alpha(double x0, double p0, double omega);

// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!) up to policy.max_level.
// Throws TruncationError when the dropped tail mass exceeds policy.tail_tol.
StateVector coherent_amplitudes(std::complex<double> alpha, const TruncationPolicy& policy);

// Normalized image of p|phi> from p = i sqrt(omega/2)(a^dag - a), with the
// global phase removed (first nonvanishing amplitude rotated real positive).
// Throws NumericalError when p|phi> vanishes within tolerance.
StateVector apply_momentum(const StateVector& phi, const OscillatorConfig& config);

}  // namespace mlgosc
