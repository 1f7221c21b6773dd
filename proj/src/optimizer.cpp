#include "mlgosc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace mlgosc {

namespace {

// Window operator W(k,n) = M_nk I_kn; <F^2> = |W c|^2. Precomputing it makes a
// grid cell a pair of gemvs.
Eigen::MatrixXcd window_operator(const TimeWindow& window, const MatrixElementTable& table,
                                 const OscillatorConfig& config) {
    const int dim = table.extent() + 1;
    Eigen::MatrixXcd w(dim, dim);
    for (int k = 0; k < dim; ++k)
        for (int n = 0; n < dim; ++n)
            w(k, n) = table(n, k) == 0.0
                          ? std::complex<double>{}
                          : table(n, k) * time_kernel_I(k, n, window, config);
    return w;
}

struct Objective {
    std::vector<Eigen::MatrixXcd> windows;  // 3 for MLG3 (12,23,13), 4 for MLG4 (12,23,34,14)
    Eigen::VectorXd diag_sq;                // M_nn^2
    Family family;
    double omega;
    int dim;

    // Most negative kernel (MLG3) or two-sided margin (MLG4); normalization by
    // tau_D^2 is left to callers since the flags and ordering are scale-free.
    std::pair<double, int> eval(const Eigen::VectorXcd& c) const {
        double f[4];
        for (size_t i = 0; i < windows.size(); ++i) f[i] = (windows[i] * c).squaredNorm();
        double kernels[4];
        if (family == Family::MLG3) {
            kernels[0] = f[0] + f[2] - f[1];
            kernels[1] = f[0] - f[2] + f[1];
            kernels[2] = -f[0] + f[2] + f[1];
            const double pw = M_PI / omega;
            const double tau_d_sq = pw * pw * diag_sq.dot(c.cwiseAbs2());
            kernels[3] = -f[0] - f[2] - f[1] + 2.0 * tau_d_sq;
        } else {
            const double pw = M_PI / omega;
            const double tau_d_sq = pw * pw * diag_sq.dot(c.cwiseAbs2());
            const double raw[4] = {f[0] + f[1] + f[2] - f[3], f[0] + f[1] - f[2] + f[3],
                                   f[0] - f[1] + f[2] + f[3], -f[0] + f[1] + f[2] + f[3]};
            for (int i = 0; i < 4; ++i) kernels[i] = std::min(raw[i], 2.0 * tau_d_sq - raw[i]);
        }
        int best = 0;
        for (int i = 1; i < 4; ++i)
            if (kernels[i] < kernels[best]) best = i;
        return {kernels[best], best};
    }

    double tau_d_sq(const Eigen::VectorXcd& c) const {
        const double pw = M_PI / omega;
        return pw * pw * diag_sq.dot(c.cwiseAbs2());
    }
};

Objective make_objective(double tau, Family family, const MatrixElementTable& table,
                         const OscillatorConfig& config) {
    if (family != Family::MLG3 && family != Family::MLG4)
        throw std::invalid_argument("optimize_coherent: family must be mlg3 or mlg4");
    Objective obj;
    obj.family = family;
    obj.omega = config.omega;
    obj.dim = table.extent() + 1;
    obj.diag_sq = table.diagonal().cwiseAbs2();
    if (family == Family::MLG3) {
        obj.windows.push_back(window_operator({0.0, tau}, table, config));
        obj.windows.push_back(window_operator({tau, 2.0 * tau}, table, config));
        obj.windows.push_back(window_operator({0.0, 2.0 * tau}, table, config));
    } else {
        obj.windows.push_back(window_operator({0.0, tau}, table, config));
        obj.windows.push_back(window_operator({tau, 2.0 * tau}, table, config));
        obj.windows.push_back(window_operator({2.0 * tau, 3.0 * tau}, table, config));
        obj.windows.push_back(window_operator({0.0, 3.0 * tau}, table, config));
    }
    return obj;
}

// Coherent amplitudes sized to the table; no tail enforcement here, cells
// whose dropped mass is visible at the search tolerance are skipped.
bool coherent_for_search(std::complex<double> alpha, int dim, Eigen::VectorXcd& c) {
    c.resize(dim);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) c[n] = c[n - 1] * alpha / std::sqrt(double(n));
    return 1.0 - c.squaredNorm() < 1e-6;
}

struct Candidate {
    double kernel = std::numeric_limits<double>::infinity();
    double abs_alpha = 0.0;
    long index = 0;
    double x0 = 0.0, p0 = 0.0;
    int kernel_index = 0;

    bool better_than(const Candidate& o) const {
        if (kernel != o.kernel) return kernel < o.kernel;
        if (abs_alpha != o.abs_alpha) return abs_alpha < o.abs_alpha;
        return index < o.index;
    }
};

}  // namespace

void SearchDomain::validate() const {
    if (grid_x < 2 || grid_p < 2) throw std::invalid_argument("search grid must be >= 2 per axis");
    if (!(x0_max > x0_min) || !(p0_max > p0_min) || !std::isfinite(x0_min) ||
        !std::isfinite(x0_max) || !std::isfinite(p0_min) || !std::isfinite(p0_max))
        throw std::invalid_argument("search domain must be a finite nonempty box");
    if (!(refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be > 0");
}

OptimumRecord optimize_coherent(double tau, Family family, const SearchDomain& domain,
                                const MatrixElementTable& table, const OscillatorConfig& config) {
    config.validate();
    domain.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("optimize_coherent: tau must be > 0");

    const Objective obj = make_objective(tau, family, table, config);
    const double dx = (domain.x0_max - domain.x0_min) / (domain.grid_x - 1);
    const double dp = (domain.p0_max - domain.p0_min) / (domain.grid_p - 1);

    const long cells = long(domain.grid_x) * domain.grid_p;
    const unsigned n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
    std::vector<Candidate> best_per_thread(n_threads);
    std::vector<long> valid_counts(n_threads, 0);

    auto scan = [&](unsigned tid) {
        Eigen::VectorXcd c;
        Candidate best;
        long valid = 0;
        for (long cell = tid; cell < cells; cell += n_threads) {
            const int ix = int(cell / domain.grid_p);
            const int ip = int(cell % domain.grid_p);
            const double x0 = domain.x0_min + ix * dx;
            const double p0 = domain.p0_min + ip * dp;
            const std::complex<double> alpha = coherent_alpha(x0, p0, config.omega);
            if (!coherent_for_search(alpha, obj.dim, c)) continue;
            ++valid;
            const auto [kernel, idx] = obj.eval(c);
            Candidate cand{kernel, std::abs(alpha), cell, x0, p0, idx};
            if (cand.better_than(best)) best = cand;
        }
        best_per_thread[tid] = best;
        valid_counts[tid] = valid;
    };
    if (n_threads == 1) {
        scan(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(scan, t);
        for (auto& th : pool) th.join();
    }

    Candidate best;
    long valid_total = 0;
    for (unsigned t = 0; t < n_threads; ++t) {
        valid_total += valid_counts[t];
        if (best_per_thread[t].better_than(best)) best = best_per_thread[t];
    }
    if (valid_total == 0)
        throw TruncationError(
            "optimize_coherent: no grid cell representable at the table extent");

    // Bounded Nelder-Mead refinement from the grid optimum.
    auto clamp_point = [&](Eigen::Vector2d v) {
        v[0] = std::clamp(v[0], domain.x0_min, domain.x0_max);
        v[1] = std::clamp(v[1], domain.p0_min, domain.p0_max);
        return v;
    };
    Eigen::VectorXcd c;
    auto feval = [&](const Eigen::Vector2d& v) {
        const std::complex<double> alpha = coherent_alpha(v[0], v[1], config.omega);
        if (!coherent_for_search(alpha, obj.dim, c))
            return std::numeric_limits<double>::infinity();
        return obj.eval(c).first;
    };

    std::array<Eigen::Vector2d, 3> simplex{
        Eigen::Vector2d{best.x0, best.p0},
        clamp_point({best.x0 + 0.5 * dx * (best.x0 < 0.5 * (domain.x0_min + domain.x0_max) ? 1 : -1),
                     best.p0}),
        clamp_point({best.x0,
                     best.p0 + 0.5 * dp * (best.p0 < 0.5 * (domain.p0_min + domain.p0_max) ? 1 : -1)})};
    std::array<double, 3> fvals{feval(simplex[0]), feval(simplex[1]), feval(simplex[2])};

    bool converged = false;
    for (int iter = 0; iter < 600; ++iter) {
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fvals[a] < fvals[b]; });
        if (std::abs(fvals[order[2]] - fvals[order[0]]) < domain.refine_tol &&
            (simplex[order[2]] - simplex[order[0]]).norm() < 1e-7) {
            converged = true;
            break;
        }
        const Eigen::Vector2d centroid = 0.5 * (simplex[order[0]] + simplex[order[1]]);
        const Eigen::Vector2d reflected = clamp_point(centroid + (centroid - simplex[order[2]]));
        const double fr = feval(reflected);
        if (fr < fvals[order[0]]) {
            const Eigen::Vector2d expanded =
                clamp_point(centroid + 2.0 * (centroid - simplex[order[2]]));
            const double fe = feval(expanded);
            if (fe < fr) {
                simplex[order[2]] = expanded;
                fvals[order[2]] = fe;
            } else {
                simplex[order[2]] = reflected;
                fvals[order[2]] = fr;
            }
        } else if (fr < fvals[order[1]]) {
            simplex[order[2]] = reflected;
            fvals[order[2]] = fr;
        } else {
            const Eigen::Vector2d contracted =
                clamp_point(centroid + 0.5 * (simplex[order[2]] - centroid));
            const double fc = feval(contracted);
            if (fc < fvals[order[2]]) {
                simplex[order[2]] = contracted;
                fvals[order[2]] = fc;
            } else {
                for (int i : {order[1], order[2]}) {
                    simplex[i] = clamp_point(simplex[order[0]] + 0.5 * (simplex[i] - simplex[order[0]]));
                    fvals[i] = feval(simplex[i]);
                }
            }
        }
    }

    int final_idx = 0;
    for (int i = 1; i < 3; ++i)
        if (fvals[i] < fvals[final_idx]) final_idx = i;
    Eigen::Vector2d opt = simplex[final_idx];
    double fopt = fvals[final_idx];
    // refinement never worsens the grid best
    if (best.kernel < fopt) {
        opt = {best.x0, best.p0};
        fopt = best.kernel;
    }
    // canonical parity representative: x0 >= 0 (or p0 >= 0 on the x0 = 0 line)
    if (opt[0] < -1e-12 || (std::abs(opt[0]) <= 1e-12 && opt[1] < 0.0)) opt = -opt;

    OptimumRecord rec;
    rec.x0 = opt[0];
    rec.p0 = opt[1];
    rec.alpha = coherent_alpha(opt[0], opt[1], config.omega);
    rec.best_kernel = fopt;
    rec.omega_tau = config.omega * tau;
    rec.converged = converged;
    Eigen::VectorXcd copt;
    coherent_for_search(rec.alpha, obj.dim, copt);
    rec.kernel_index = obj.eval(copt).second;
    rec.tau_d_sq = obj.tau_d_sq(copt);
    return rec;
}

std::vector<SweepRow> sweep_grid(const std::vector<double>& tau_values, Family family,
                                 const SearchDomain& domain, const MatrixElementTable& table,
                                 const OscillatorConfig& config) {
    if (tau_values.empty()) throw std::invalid_argument("sweep_grid: tau grid must be nonempty");
    for (double t : tau_values)
        if (!(t > 0.0)) throw std::invalid_argument("sweep_grid: tau values must be positive");
    std::vector<SweepRow> rows;
    rows.reserve(tau_values.size());
    for (double tau : tau_values) {
        SweepRow row;
        row.omega_tau = config.omega * tau;
        try {
            row.record = optimize_coherent(tau, family, domain, table, config);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mlgosc
