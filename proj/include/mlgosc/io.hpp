#pragma once
// CSV/JSON emission. All floating-point output uses 17 significant digits so
// files re-parse to bit-identical values.

#include <iosfwd>
#include <string>
#include <vector>

#include "mlgosc/inequalities.hpp"
#include "mlgosc/optimizer.hpp"

namespace mlgosc {

// %.17g rendering of a double.
std::string format_double(double v);

struct CurveRow {
    double omega_tau = 0.0;
    double value = 0.0;
    double tail_estimate = 0.0;
    std::vector<double> extra;  // optional extra columns
};

// Header "omega_tau,value,tail_estimate[,extra...]".
void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows,
                     const std::vector<std::string>& extra_columns = {});

// Header "omega_tau,x0,p0,best_kernel,kernel_index,tau_d_sq".
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// Versioned report object: {"schema":"mlg-1", family, kernels, violated,
// luders_scale, inputs{...}, conventions{...}}.
std::string report_json(const InequalityReport& report, const std::string& state_spec,
                        const CouplingSpec& coupling, double omega,
                        const std::vector<TimeWindow>& windows);

}  // namespace mlgosc
