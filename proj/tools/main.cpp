// mlgosc: modified Leggett-Garg correlators and inequality scans for the
// quantum harmonic oscillator under a localized waiting detector.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mlgosc/harness.hpp"

namespace {

struct Flags {
    mlgosc::RunConfig rc;
    std::string config_path;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "key=value config file; flags win on conflict");
    cmd->add_option("--coupling", f.rc.coupling, "delta | gaussian:SIGMA");
    cmd->add_option("--omega", f.rc.omega, "oscillator angular frequency");
    cmd->add_option("--max-level", f.rc.max_level, "Fock truncation N_max");
    cmd->add_option("--tail-tol", f.rc.tail_tol, "relative tolerance for dropped tails");
    cmd->add_option("--out", f.rc.output, "output path ('-' = stdout)");
    cmd->add_option("--format", f.rc.format, "csv | json");
}

void add_grid(CLI::App* cmd, Flags& f) {
    cmd->add_option("--grid-min", f.rc.grid_min, "omega*tau grid start");
    cmd->add_option("--grid-max", f.rc.grid_max, "omega*tau grid end");
    cmd->add_option("--grid-points", f.rc.grid_points, "number of grid points");
}

// Flags explicitly given on the command line override the config file.
mlgosc::RunConfig merge_config(const CLI::App* cmd, const Flags& f,
                               const std::string& command_name) {
    mlgosc::RunConfig rc = f.rc;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw std::invalid_argument("cannot read config file: " + f.config_path);
        std::ostringstream text;
        text << in.rdbuf();
        mlgosc::RunConfig base = mlgosc::RunConfig::from_key_values(text.str());
        auto keep = [&](const std::string& flag) {
            const CLI::Option* opt = cmd->get_option_no_throw(flag);
            return opt != nullptr && opt->count() > 0;
        };
        if (!keep("--coupling")) rc.coupling = base.coupling;
        if (!keep("--omega")) rc.omega = base.omega;
        if (!keep("--state")) rc.state = base.state;
        if (!keep("--family")) rc.family = base.family;
        if (!keep("--grid-min")) rc.grid_min = base.grid_min;
        if (!keep("--grid-max")) rc.grid_max = base.grid_max;
        if (!keep("--grid-points")) rc.grid_points = base.grid_points;
        if (!keep("--max-level")) rc.max_level = base.max_level;
        if (!keep("--tail-tol")) rc.tail_tol = base.tail_tol;
        if (!keep("--sigma")) rc.sigma = base.sigma;
        if (!keep("--domain-half-width")) rc.domain_half_width = base.domain_half_width;
        if (!keep("--domain-grid")) rc.domain_grid = base.domain_grid;
        if (!keep("--method")) rc.dwell_method = base.dwell_method;
        if (!keep("--oscillatory")) rc.oscillatory = base.oscillatory;
        if (!keep("--map-standard")) rc.map_standard = base.map_standard;
        if (!keep("--out")) rc.output = base.output;
        if (!keep("--format")) rc.format = base.format;
    }
    rc.command = command_name;
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modified Leggett-Garg correlator toolkit for the harmonic oscillator"};
    app.require_subcommand(1);

    Flags fc, fi, fo, fd, fg;

    CLI::App* correlator = app.add_subcommand("correlator", "emit <F12^2>(omega tau) curves");
    add_common(correlator, fc);
    add_grid(correlator, fc);
    correlator->add_option("--state", fc.rc.state, "fock:n | coherent:x0,p0 | pstate:n");
    correlator->add_flag("--oscillatory", fc.rc.oscillatory, "add the oscillatory-part column");
    correlator->add_flag("--map-standard", fc.rc.map_standard,
                         "add the mapped standard-correlator column(s)");

    CLI::App* inequalities =
        app.add_subcommand("inequalities", "evaluate an inequality family over a tau grid");
    add_common(inequalities, fi);
    add_grid(inequalities, fi);
    inequalities->add_option("--state", fi.rc.state, "fock:n | coherent:x0,p0 | pstate:n");
    inequalities->add_option("--family", fi.rc.family, "mlg3 | mlg4 | stat3 | stat4 | lg2");

    CLI::App* optimize =
        app.add_subcommand("optimize", "optimize violations over coherent states per tau");
    add_common(optimize, fo);
    add_grid(optimize, fo);
    optimize->add_option("--family", fo.rc.family, "mlg3 | mlg4");
    optimize->add_option("--domain-half-width", fo.rc.domain_half_width,
                         "half width of the (x0,p0) search box");
    optimize->add_option("--domain-grid", fo.rc.domain_grid, "coarse grid points per axis");

    CLI::App* dwell = app.add_subcommand("dwell", "dwell-time second moment for a state");
    add_common(dwell, fd);
    dwell->add_option("--state", fd.rc.state, "fock:n | coherent:x0,p0 | pstate:n");
    dwell->add_option("--method", fd.rc.dwell_method, "spectral | windowpi | both");

    CLI::App* gtable = app.add_subcommand("gaussian-table", "export Gaussian coupling elements");
    add_common(gtable, fg);
    gtable->add_option("--sigma", fg.rc.sigma, "Gaussian window width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mlgosc::kExitUsage;
    }

    try {
        if (correlator->parsed())
            return mlgosc::run_command(merge_config(correlator, fc, "correlator"), std::cerr);
        if (inequalities->parsed())
            return mlgosc::run_command(merge_config(inequalities, fi, "inequalities"), std::cerr);
        if (optimize->parsed())
            return mlgosc::run_command(merge_config(optimize, fo, "optimize"), std::cerr);
        if (dwell->parsed())
            return mlgosc::run_command(merge_config(dwell, fd, "dwell"), std::cerr);
        if (gtable->parsed())
            return mlgosc::run_command(merge_config(gtable, fg, "gaussian-table"), std::cerr);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return mlgosc::kExitUsage;
    }
    return mlgosc::kExitUsage;
}
