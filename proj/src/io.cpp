#include "mlgosc/io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace mlgosc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows,
                     const std::vector<std::string>& extra_columns) {
    os << "omega_tau,value,tail_estimate";
    for (const auto& c : extra_columns) os << ',' << c;
    os << '\n';
    for (const auto& r : rows) {
        os << format_double(r.omega_tau) << ',' << format_double(r.value) << ','
           << format_double(r.tail_estimate);
        for (double e : r.extra) os << ',' << format_double(e);
        os << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "omega_tau,x0,p0,best_kernel,kernel_index,tau_d_sq\n";
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            os << format_double(r.omega_tau) << ",error,,,,\n";
            continue;
        }
        os << format_double(r.omega_tau) << ',' << format_double(r.record.x0) << ','
           << format_double(r.record.p0) << ',' << format_double(r.record.best_kernel) << ','
           << r.record.kernel_index << ',' << format_double(r.record.tau_d_sq) << '\n';
    }
}

std::string report_json(const InequalityReport& report, const std::string& state_spec,
                        const CouplingSpec& coupling, double omega,
                        const std::vector<TimeWindow>& windows) {
    nlohmann::json j;
    j["schema"] = "mlg-1";
    j["family"] = family_name(report.family);
    j["kernels"] = report.kernels;
    j["violated"] = report.violated;
    j["luders_scale"] = report.luders_scale;
    if (report.luders_upper) j["luders_upper"] = *report.luders_upper;
    if (report.upper_bound) j["upper_bound"] = *report.upper_bound;
    j["tau_d_sq"] = report.tau_d_sq;
    j["flag_tol"] = report.flag_tol;
    j["inputs"]["state"] = state_spec;
    j["inputs"]["coupling"] = coupling.kind == CouplingKind::Delta
                                  ? std::string("delta")
                                  : "gaussian:" + format_double(coupling.sigma);
    j["inputs"]["omega"] = omega;
    auto& w = j["inputs"]["windows"];
    w = nlohmann::json::array();
    for (const auto& win : windows) w.push_back({win.t1, win.t2});
    j["conventions"] = {{"units", "hbar = m = 1, positions in oscillator lengths"},
                        {"delta_normalization", "L psi_0(0)^2 = 1/sqrt(pi)"},
                        {"gaussian_normalization", "unit-integral window, exact delta limit"},
                        {"dwell_method", "spectral (pi/omega)^2 sum |c_n|^2 M_nn^2"}};
    return j.dump(2);
}

}  // namespace mlgosc
