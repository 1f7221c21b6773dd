#pragma once
// Modified Leggett-Garg inequality families on the <F^2> correlators,
// Luders-scale references, and the trajectory-probability identity.

#include <optional>
#include <utility>
#include <vector>

#include "mlgosc/correlators.hpp"

namespace mlgosc {

enum class Family { MLG3, MLG4, Stat3, Stat4, TwoTimeDelta };

const char* family_name(Family f);

struct InequalityReport {
    Family family = Family::MLG3;
    std::vector<double> kernels;
    std::vector<bool> violated;
    double luders_scale = 0.0;                // lower-side quantum scale indication
    std::optional<double> luders_upper{};     // MLG4 only
    std::optional<double> upper_bound{};      // MLG4 macrorealistic upper bound, 2 tau_D^2
    double tau_d_sq = 0.0;
    double flag_tol = 0.0;                    // tolerance used for the violated flags
};

// Three-time kernels in the order
//   F12 + F13 - F23,  F12 - F13 + F23,  -F12 + F13 + F23,
//   -F12 - F13 - F23 + 2 tau_D^2,
// each >= 0 macrorealistically. Luders scale -tau_D^2/4. Inputs must share
// nested windows [t1,t2], [t2,t3], [t1,t3]; throws std::invalid_argument on
// mismatch.
InequalityReport mlg3_evaluate(const CorrelatorValue& f12, const CorrelatorValue& f23,
                               const CorrelatorValue& f13, const DwellTime& dwell);

// Four-time kernels: all four placements of the minus sign in
// F12 + F23 + F34 - F14, two-sided bounds [0, 2 tau_D^2]; the violated flag
// is set when either side is crossed. Luders pair (1 -/+ sqrt(2)) tau_D^2.
InequalityReport mlg4_evaluate(const CorrelatorValue& f12, const CorrelatorValue& f23,
                               const CorrelatorValue& f34, const CorrelatorValue& f14,
                               const DwellTime& dwell);

// Equal-interval stationary kernels for an even eigenstate:
//   Stat3: 2 F(tau) - F(2 tau)   (from the second three-time inequality)
//   Stat4: 3 F(tau) - F(3 tau)   (from the first four-time inequality)
// returned as one single-kernel report per family with its own Luders scale.
std::pair<InequalityReport, InequalityReport> stationary_kernels(int n, double tau,
                                                                 const MatrixElementTable& table,
                                                                 const OscillatorConfig& config);

// Two-time combination for delta coupling, where <tau_D^2 theta> = tau_D^2/2
// reduces the kernel to <F12^2> itself. Rejects Gaussian-coupling inputs.
double lg2_two_time_delta(const CorrelatorValue& f12, const DwellTime& dwell);

// (p(s1,s2,s3) + p(-s1,-s2,-s3)) under an assumed joint probability:
// (1 + s1 s2 c12 + s2 s3 c23 + s1 s3 c13)/4. May be negative; that is the
// macrorealism-violation signal.
double trajectory_probability_pair(double c12, double c23, double c13, int s1, int s2, int s3);

}  // namespace mlgosc
