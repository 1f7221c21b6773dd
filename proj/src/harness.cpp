#include "mlgosc/harness.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "mlgosc/diagnostics.hpp"

namespace mlgosc {

namespace {

std::vector<double> parse_grid(const RunConfig& c) {
    if (c.grid_points < 1 || !(c.grid_max > c.grid_min) || c.grid_min < 0.0)
        throw std::invalid_argument("grid: need grid_points >= 1 and 0 <= grid_min < grid_max");
    std::vector<double> wt(c.grid_points);
    if (c.grid_points == 1) {
        wt[0] = c.grid_max;
        return wt;
    }
    const double step = (c.grid_max - c.grid_min) / (c.grid_points - 1);
    for (int i = 0; i < c.grid_points; ++i) wt[i] = c.grid_min + i * step;
    return wt;
}

OscillatorConfig oscillator_config(const RunConfig& c) {
    OscillatorConfig cfg{c.omega, {c.max_level, c.tail_tol}};
    cfg.validate();
    return cfg;
}

struct OutputFile {
    std::ofstream file;
    std::ostream* os;
    explicit OutputFile(const std::string& path) {
        if (path.empty() || path == "-") {
            os = &std::cout;
            return;
        }
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output path: " + path);
        os = &file;
    }
};

int guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const TruncationError& e) {
        err << "numerical failure (truncation): " << e.what()
            << " -- raise max_level or loosen tail_tol\n";
        return kExitNumerical;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

bool is_fock(const std::string& s) { return s.rfind("fock:", 0) == 0; }

int fock_level(const std::string& s) { return std::stoi(s.substr(5)); }

}  // namespace

CouplingSpec parse_coupling(const std::string& text) {
    if (text == "delta") return CouplingSpec::delta();
    if (text.rfind("gaussian:", 0) == 0) {
        try {
            const double sigma = std::stod(text.substr(9));
            CouplingSpec spec = CouplingSpec::gaussian(sigma);
            spec.validate();
            return spec;
        } catch (const std::exception&) {
            throw std::invalid_argument("coupling: cannot parse '" + text + "'");
        }
    }
    throw std::invalid_argument("coupling must be 'delta' or 'gaussian:SIGMA', got '" + text + "'");
}

StateVector parse_state(const std::string& text, const OscillatorConfig& config) {
    try {
        if (is_fock(text)) return StateVector::fock(fock_level(text), config.truncation.max_level);
        if (text.rfind("coherent:", 0) == 0) {
            const std::string rest = text.substr(9);
            const auto comma = rest.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("need coherent:x0,p0");
            const double x0 = std::stod(rest.substr(0, comma));
            const double p0 = std::stod(rest.substr(comma + 1));
            return coherent_amplitudes(coherent_alpha(x0, p0, config.omega), config.truncation);
        }
        if (text.rfind("pstate:", 0) == 0) {
            const int n = std::stoi(text.substr(7));
            return apply_momentum(StateVector::fock(n, config.truncation.max_level), config);
        }
    } catch (const TruncationError&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("state: cannot parse '" + text + "'");
    }
    throw std::invalid_argument("state must be fock:n | coherent:x0,p0 | pstate:n, got '" + text +
                                "'");
}

Family parse_family(const std::string& text) {
    if (text == "mlg3") return Family::MLG3;
    if (text == "mlg4") return Family::MLG4;
    if (text == "stat3") return Family::Stat3;
    if (text == "stat4") return Family::Stat4;
    if (text == "lg2") return Family::TwoTimeDelta;
    throw std::invalid_argument("family must be mlg3|mlg4|stat3|stat4|lg2, got '" + text + "'");
}

std::string RunConfig::to_key_values() const {
    std::ostringstream os;
    os << "command=" << command << "\n"
       << "coupling=" << coupling << "\n"
       << "omega=" << format_double(omega) << "\n"
       << "state=" << state << "\n"
       << "family=" << family << "\n"
       << "grid_min=" << format_double(grid_min) << "\n"
       << "grid_max=" << format_double(grid_max) << "\n"
       << "grid_points=" << grid_points << "\n"
       << "max_level=" << max_level << "\n"
       << "tail_tol=" << format_double(tail_tol) << "\n"
       << "sigma=" << format_double(sigma) << "\n"
       << "domain_half_width=" << format_double(domain_half_width) << "\n"
       << "domain_grid=" << domain_grid << "\n"
       << "dwell_method=" << dwell_method << "\n"
       << "oscillatory=" << (oscillatory ? 1 : 0) << "\n"
       << "map_standard=" << (map_standard ? 1 : 0) << "\n"
       << "output=" << output << "\n"
       << "format=" << format << "\n";
    return os.str();
}

RunConfig RunConfig::from_key_values(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config file: expected key=value, got '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "command") c.command = val;
        else if (key == "coupling") c.coupling = val;
        else if (key == "omega") c.omega = std::stod(val);
        else if (key == "state") c.state = val;
        else if (key == "family") c.family = val;
        else if (key == "grid_min") c.grid_min = std::stod(val);
        else if (key == "grid_max") c.grid_max = std::stod(val);
        else if (key == "grid_points") c.grid_points = std::stoi(val);
        else if (key == "max_level") c.max_level = std::stoi(val);
        else if (key == "tail_tol") c.tail_tol = std::stod(val);
        else if (key == "sigma") c.sigma = std::stod(val);
        else if (key == "domain_half_width") c.domain_half_width = std::stod(val);
        else if (key == "domain_grid") c.domain_grid = std::stoi(val);
        else if (key == "dwell_method") c.dwell_method = val;
        else if (key == "oscillatory") c.oscillatory = val == "1" || val == "true";
        else if (key == "map_standard") c.map_standard = val == "1" || val == "true";
        else if (key == "output") c.output = val;
        else if (key == "format") c.format = val;
        else throw std::invalid_argument("config file: unknown key '" + key + "'");
    }
    return c;
}

int cmd_correlator(const RunConfig& rc, std::ostream& err) {
    return guarded(err, [&] {
        const OscillatorConfig cfg = oscillator_config(rc);
        const CouplingSpec spec = parse_coupling(rc.coupling);
        const StateVector state = parse_state(rc.state, cfg);
        auto table = cached_table(spec, cfg, rc.max_level + 16);
        const auto grid = parse_grid(rc);
        const bool fock = is_fock(rc.state);
        const bool p1 = rc.state == "pstate:1";
        const DwellTime dwell = dwell_time_sq(state, *table, cfg, DwellMethod::Spectral);

        std::vector<std::string> extra;
        if (rc.oscillatory) {
            if (!fock) throw std::invalid_argument("oscillatory column requires a fock state");
            extra.push_back("oscillatory");
        }
        if (p1) extra.push_back("closed_form");
        if (rc.map_standard) {
            extra.push_back("std_correlator");
            if (p1) extra.push_back("std_correlator_closed");
        }

        std::vector<CurveRow> rows;
        rows.reserve(grid.size());
        for (double wt : grid) {
            const double tau = wt / cfg.omega;
            CurveRow row;
            row.omega_tau = wt;
            CorrelatorValue v;
            if (fock) {
                v = f12sq_eigenstate_closed(fock_level(rc.state), tau, *table, cfg);
            } else {
                v = f12sq_expectation(state, TimeWindow{0.0, tau}, *table, cfg);
            }
            row.value = v.value;
            row.tail_estimate = v.tail_estimate;
            if (rc.oscillatory) {
                const double mnn = (*table)(fock_level(rc.state), fock_level(rc.state));
                row.extra.push_back(v.value - tau * tau * mnn * mnn);
            }
            CorrelatorValue closed{};
            if (p1) {
                closed = f12sq_p1_closed(tau, cfg);
                row.extra.push_back(closed.value);
            }
            if (rc.map_standard) {
                row.extra.push_back(standard_correlator_map(v, dwell));
                if (p1) {
                    const double w = cfg.omega;
                    const DwellTime closed_dwell{M_PI * M_PI / (4.0 * w * w),
                                                 DwellMethod::Spectral};
                    row.extra.push_back(standard_correlator_map(closed, closed_dwell));
                }
            }
            rows.push_back(std::move(row));
        }

        OutputFile out(rc.output);
        if (rc.format == "csv") {
            write_curve_csv(*out.os, rows, extra);
        } else if (rc.format == "json") {
            nlohmann::json j;
            j["schema"] = "mlg-1";
            j["columns"] = [&] {
                std::vector<std::string> cols{"omega_tau", "value", "tail_estimate"};
                cols.insert(cols.end(), extra.begin(), extra.end());
                return cols;
            }();
            auto& data = j["rows"];
            data = nlohmann::json::array();
            for (const auto& r : rows) {
                nlohmann::json jr{r.omega_tau, r.value, r.tail_estimate};
                for (double e : r.extra) jr.push_back(e);
                data.push_back(jr);
            }
            j["conventions"] = {{"units", "hbar = m = 1, positions in oscillator lengths"},
                                {"dwell_method", "spectral"},
                                {"state", rc.state},
                                {"coupling", rc.coupling},
                                {"omega", cfg.omega}};
            *out.os << j.dump(2) << "\n";
        } else {
            throw std::invalid_argument("format must be csv or json");
        }
    });
}

int cmd_inequalities(const RunConfig& rc, std::ostream& err) {
    return guarded(err, [&] {
        const OscillatorConfig cfg = oscillator_config(rc);
        const CouplingSpec spec = parse_coupling(rc.coupling);
        const Family family = parse_family(rc.family);
        const StateVector state = parse_state(rc.state, cfg);
        auto table = cached_table(spec, cfg, rc.max_level + 16);
        const auto grid = parse_grid(rc);

        if ((family == Family::Stat3 || family == Family::Stat4) && !is_fock(rc.state))
            throw std::invalid_argument("stationary families require a fock state");
        if (family == Family::TwoTimeDelta && spec.kind != CouplingKind::Delta)
            throw std::invalid_argument("lg2 requires delta coupling");

        const DwellTime dwell = dwell_time_sq(state, *table, cfg, DwellMethod::Spectral);
        std::vector<InequalityReport> reports;
        std::vector<std::vector<TimeWindow>> all_windows;
        for (double wt : grid) {
            const double tau = wt / cfg.omega;
            if (!(tau > 0.0)) continue;
            switch (family) {
                case Family::Stat3:
                case Family::Stat4: {
                    auto [s3, s4] = stationary_kernels(fock_level(rc.state), tau, *table, cfg);
                    reports.push_back(family == Family::Stat3 ? s3 : s4);
                    all_windows.push_back({{0.0, tau},
                                           {0.0, family == Family::Stat3 ? 2.0 * tau : 3.0 * tau}});
                    break;
                }
                case Family::MLG3: {
                    const auto f12 = f12sq_expectation(state, {0.0, tau}, *table, cfg);
                    const auto f23 = f12sq_expectation(state, {tau, 2.0 * tau}, *table, cfg);
                    const auto f13 = f12sq_expectation(state, {0.0, 2.0 * tau}, *table, cfg);
                    reports.push_back(mlg3_evaluate(f12, f23, f13, dwell));
                    all_windows.push_back({{0.0, tau}, {tau, 2.0 * tau}, {0.0, 2.0 * tau}});
                    break;
                }
                case Family::MLG4: {
                    const auto f12 = f12sq_expectation(state, {0.0, tau}, *table, cfg);
                    const auto f23 = f12sq_expectation(state, {tau, 2.0 * tau}, *table, cfg);
                    const auto f34 = f12sq_expectation(state, {2.0 * tau, 3.0 * tau}, *table, cfg);
                    const auto f14 = f12sq_expectation(state, {0.0, 3.0 * tau}, *table, cfg);
                    reports.push_back(mlg4_evaluate(f12, f23, f34, f14, dwell));
                    all_windows.push_back(
                        {{0.0, tau}, {tau, 2.0 * tau}, {2.0 * tau, 3.0 * tau}, {0.0, 3.0 * tau}});
                    break;
                }
                case Family::TwoTimeDelta: {
                    const auto f12 = f12sq_expectation(state, {0.0, tau}, *table, cfg);
                    InequalityReport r;
                    r.family = Family::TwoTimeDelta;
                    r.kernels = {lg2_two_time_delta(f12, dwell)};
                    r.flag_tol = std::max(1e-12, 3.0 * f12.tail_estimate);
                    r.violated = {r.kernels[0] < -r.flag_tol};
                    r.tau_d_sq = dwell.tau_d_sq;
                    r.luders_scale = 0.0;  // identically nonnegative for this coupling
                    reports.push_back(std::move(r));
                    all_windows.push_back({{0.0, tau}});
                    break;
                }
            }
        }

        OutputFile out(rc.output);
        if (rc.format == "csv") {
            const size_t nk = reports.empty() ? 1 : reports.front().kernels.size();
            *out.os << "omega_tau";
            for (size_t i = 1; i <= nk; ++i) *out.os << ",kernel_" << i;
            for (size_t i = 1; i <= nk; ++i) *out.os << ",violated_" << i;
            *out.os << ",luders_scale,tau_d_sq\n";
            for (size_t r = 0; r < reports.size(); ++r) {
                const auto& rep = reports[r];
                *out.os << format_double(cfg.omega * all_windows[r][0].t2);
                for (double k : rep.kernels) *out.os << ',' << format_double(k);
                for (bool v : rep.violated) *out.os << ',' << (v ? 1 : 0);
                *out.os << ',' << format_double(rep.luders_scale) << ','
                        << format_double(rep.tau_d_sq) << '\n';
            }
        } else if (rc.format == "json") {
            nlohmann::json arr = nlohmann::json::array();
            for (size_t r = 0; r < reports.size(); ++r)
                arr.push_back(nlohmann::json::parse(
                    report_json(reports[r], rc.state, spec, cfg.omega, all_windows[r])));
            nlohmann::json j{{"schema", "mlg-1"}, {"reports", std::move(arr)}};
            *out.os << j.dump(2) << "\n";
        } else {
            throw std::invalid_argument("format must be csv or json");
        }
    });
}

int cmd_optimize(const RunConfig& rc, std::ostream& err) {
    return guarded(err, [&] {
        const OscillatorConfig cfg = oscillator_config(rc);
        const CouplingSpec spec = parse_coupling(rc.coupling);
        const Family family = parse_family(rc.family);
        auto table = cached_table(spec, cfg, rc.max_level + 16);
        const auto grid = parse_grid(rc);
        if (!(rc.domain_half_width > 0.0))
            throw std::invalid_argument("domain_half_width must be > 0");
        SearchDomain domain;
        domain.x0_min = -rc.domain_half_width;
        domain.x0_max = rc.domain_half_width;
        domain.p0_min = -rc.domain_half_width;
        domain.p0_max = rc.domain_half_width;
        domain.grid_x = domain.grid_p = rc.domain_grid;
        domain.validate();

        std::vector<double> taus;
        for (double wt : grid)
            if (wt > 0.0) taus.push_back(wt / cfg.omega);
        if (taus.empty()) throw std::invalid_argument("tau grid contains no positive entries");

        const auto rows = sweep_grid(taus, family, domain, *table, cfg);
        OutputFile out(rc.output);
        if (rc.format == "csv") {
            write_sweep_csv(*out.os, rows);
        } else if (rc.format == "json") {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : rows) {
                nlohmann::json jr{{"omega_tau", r.omega_tau}};
                if (r.error.empty()) {
                    jr["x0"] = r.record.x0;
                    jr["p0"] = r.record.p0;
                    jr["best_kernel"] = r.record.best_kernel;
                    jr["kernel_index"] = r.record.kernel_index;
                    jr["tau_d_sq"] = r.record.tau_d_sq;
                    jr["converged"] = r.record.converged;
                } else {
                    jr["error"] = r.error;
                }
                arr.push_back(std::move(jr));
            }
            nlohmann::json j{{"schema", "mlg-1"}, {"sweep", std::move(arr)}};
            *out.os << j.dump(2) << "\n";
        } else {
            throw std::invalid_argument("format must be csv or json");
        }
    });
}

int cmd_dwell(const RunConfig& rc, std::ostream& err) {
    return guarded(err, [&] {
        const OscillatorConfig cfg = oscillator_config(rc);
        const CouplingSpec spec = parse_coupling(rc.coupling);
        const StateVector state = parse_state(rc.state, cfg);
        auto table = cached_table(spec, cfg, rc.max_level + 16);

        std::vector<std::pair<std::string, double>> values;
        if (rc.dwell_method == "spectral" || rc.dwell_method == "both")
            values.emplace_back(
                "spectral", dwell_time_sq(state, *table, cfg, DwellMethod::Spectral).tau_d_sq);
        if (rc.dwell_method == "windowpi" || rc.dwell_method == "both")
            values.emplace_back(
                "windowpi", dwell_time_sq(state, *table, cfg, DwellMethod::WindowPi).tau_d_sq);
        if (values.empty())
            throw std::invalid_argument("dwell_method must be spectral|windowpi|both");

        OutputFile out(rc.output);
        if (rc.format == "csv") {
            *out.os << "method,tau_d_sq\n";
            for (const auto& [m, v] : values) *out.os << m << ',' << format_double(v) << '\n';
        } else if (rc.format == "json") {
            nlohmann::json j{{"schema", "mlg-1"}, {"state", rc.state}, {"coupling", rc.coupling}};
            for (const auto& [m, v] : values) j["tau_d_sq"][m] = v;
            *out.os << j.dump(2) << "\n";
        } else {
            throw std::invalid_argument("format must be csv or json");
        }
    });
}

int cmd_gaussian_table(const RunConfig& rc, std::ostream& err) {
    return guarded(err, [&] {
        const OscillatorConfig cfg = oscillator_config(rc);
        const auto table = gaussian_matrix_elements(rc.sigma, cfg, rc.max_level);
        OutputFile out(rc.output);
        export_table_csv(table, *out.os);
    });
}

int run_command(const RunConfig& rc, std::ostream& err) {
    if (rc.command == "correlator") return cmd_correlator(rc, err);
    if (rc.command == "inequalities") return cmd_inequalities(rc, err);
    if (rc.command == "optimize") return cmd_optimize(rc, err);
    if (rc.command == "dwell") return cmd_dwell(rc, err);
    if (rc.command == "gaussian-table") return cmd_gaussian_table(rc, err);
    err << "config error: unknown command '" << rc.command << "'\n";
    return kExitUsage;
}

}  // namespace mlgosc
