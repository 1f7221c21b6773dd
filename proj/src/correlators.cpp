#include "mlgosc/correlators.hpp"

#include <cmath>
#include <vector>

namespace mlgosc {

namespace {

// Hard caps on the extended k sums. The one-dimensional sums are cheap per
// term; the expectation sum costs O(state size) per term.
constexpr long kExtensionCap1d = 30'000'000;
constexpr long kExtensionCapExpect = 4'000'000;
constexpr double kSmallWindow = 1e-3;  // below this omega*tau the k sum is non-analytic

// sqrt(2/pi)/sqrt(pi): psi_k(0)^2 <= kPsiSqBound / sqrt(k) for even k >= 2,
// from (k-1)!!/k!! <= sqrt(2/(pi k)).
const double kPsiSqBound = std::sqrt(2.0 / M_PI) / std::sqrt(M_PI);

// Rigorous bound on prefactor * sum_{even k >= k_first} psi_k(0)^2
// * min(tau^2, 4/(w^2 (k - n_ref)^2)), from (1-cos x) <= min(2, x^2/2).
// Two regimes split at kstar = n_ref + 2/(w tau): secular tau^2 growth below,
// 1/k^2 kernel decay with the k^{-1/2} element decay above.
double delta_tail_bound(double prefactor, int n_ref, double k_first, double tau, double omega) {
    if (tau <= 0.0 || prefactor <= 0.0) return 0.0;
    double bound = 0.0;
    double k_eff = std::max(k_first - 2.0, 1.0);  // integral bound covers even k >= k_first
    const double kstar = n_ref + 2.0 / (omega * tau);
    if (k_eff < kstar) {
        bound += prefactor * kPsiSqBound * tau * tau * (std::sqrt(kstar) - std::sqrt(k_eff));
        k_eff = kstar;
    }
    k_eff = std::max(k_eff, 2.0 * n_ref + 2.0);
    bound += prefactor * kPsiSqBound * (16.0 / (3.0 * omega * omega)) * std::pow(k_eff, -1.5);
    return bound;
}

struct TailPolicy {
    double tol;    // relative target
    bool enforce;  // throw when the bound cannot be met
};

void maybe_throw(double tail, double value, double omega_tau, const TailPolicy& policy,
                 const char* who) {
    if (!policy.enforce) return;
    if (omega_tau < kSmallWindow) return;  // reported with the enlarged tail instead
    if (tail > policy.tol * std::max(std::abs(value), 1e-300))
        throw TruncationError(std::string(who) +
                              ": spectral tail bound exceeds tail_tol at the extension cap");
}

// Unit phase recurrence with periodic renormalization against drift.
struct PhaseIter {
    std::complex<double> value;
    std::complex<double> step;
    double theta0, dtheta;
    long count = 0;
    PhaseIter(double theta_start, double theta_step)
        : value(std::polar(1.0, theta_start)), step(std::polar(1.0, theta_step)),
          theta0(theta_start), dtheta(theta_step) {}
    void advance() {
        value *= step;
        if (++count % 512 == 0) value = std::polar(1.0, theta0 + dtheta * double(count));
    }
};

int first_even_past(int extent) { return extent % 2 == 0 ? extent + 2 : extent + 1; }

}  // namespace

CorrelatorElement f12sq_element(int m, int n, const TimeWindow& window,
                                const MatrixElementTable& table, const OscillatorConfig& config) {
    config.validate();
    window.validate();
    if (m < 0 || n < 0 || m > table.extent() || n > table.extent())
        throw std::invalid_argument("f12sq_element: indices outside the table");
    const double w = config.omega;
    const double tau = window.length();
    if (tau == 0.0) return {};

    std::complex<double> acc{};
    for (int k = 0; k <= table.extent(); ++k) {
        const double mm = table(m, k) * table(k, n);
        if (mm == 0.0) continue;
        acc += mm * time_kernel_I(k, n, window, config) * time_kernel_I(m, k, window, config);
    }

    const TailPolicy policy{config.truncation.tail_tol, true};
    double tail = 0.0;
    if (table.is_delta()) {
        const double psi_m = psi_at_origin(m), psi_n = psi_at_origin(n);
        const double pref = std::abs(psi_m * psi_n);
        if (pref > 0.0) {
            const int n_ref = std::max(m, n);
            long k = first_even_past(table.extent());
            double psi_sq = psi_at_origin(int(k) - 2);  // carried as psi_{k-2}(0)^2, updated below
            psi_sq *= psi_sq;
            while (true) {
                tail = delta_tail_bound(pref, n_ref, double(k), tau, w);
                if (tail <= policy.tol * std::max(std::abs(acc), 1e-300) || k > kExtensionCap1d)
                    break;
                psi_sq *= double(k - 1) / double(k);
                acc += psi_m * psi_n * psi_sq *
                       time_kernel_I(int(k), n, window, config) *
                       time_kernel_I(m, int(k), window, config);
                k += 2;
            }
        }
        maybe_throw(tail, std::abs(acc), w * tau, policy, "f12sq_element");
    } else {
        // Gaussian elements decay fast in k once sqrt(2k) sigma >> 1; estimate
        // the dropped part from the last included magnitudes.
        const int K = table.extent();
        double last = 0.0;
        for (int k = std::max(0, K - 1); k <= K; ++k)
            last += std::abs(table(m, k) * table(k, n)) *
                    std::min(tau, 2.0 / (w * std::max(1, std::abs(k - n)))) *
                    std::min(tau, 2.0 / (w * std::max(1, std::abs(m - k))));
        tail = 2.0 * last;
        maybe_throw(tail, std::abs(acc), w * tau, policy, "f12sq_element");
    }
    return {acc, tail};
}

CorrelatorValue f12sq_expectation(const StateVector& state, const TimeWindow& window,
                                  const MatrixElementTable& table,
                                  const OscillatorConfig& config) {
    config.validate();
    window.validate();
    const int nmax = state.max_index();
    if (nmax > table.extent())
        throw std::invalid_argument("f12sq_expectation: state extends past the table");
    const double w = config.omega;
    const double tau = window.length();
    CorrelatorValue out{};
    out.window = window;
    out.coupling = table.coupling().kind;
    out.exactness = Exactness::Spectral;
    if (tau == 0.0) return out;

    const auto& c = state.amplitudes;
    double value = 0.0;
    // value = sum_k |v_k|^2 with v_k = sum_n c_n M_nk I_kn; manifestly >= 0.
    for (int k = 0; k <= table.extent(); ++k) {
        std::complex<double> v{};
        for (int n = 0; n <= nmax; ++n) {
            const double mnk = table(n, k);
            if (mnk == 0.0) continue;
            v += c[n] * mnk * time_kernel_I(k, n, window, config);
        }
        value += std::norm(v);
    }

    const TailPolicy policy{config.truncation.tail_tol, true};
    double tail = 0.0;
    if (table.is_delta()) {
        // v_k = psi_k(0) (i/w) [ e^{i w t1 k} sum_n a_n/(k-n) - e^{i w t2 k} sum_n b_n/(k-n) ]
        // with a_n = c_n psi_n(0) e^{-i w t1 n}, b_n likewise at t2.
        std::vector<std::complex<double>> a, b;
        std::vector<int> idx;
        double s_abs = 0.0;
        for (int n = 0; n <= nmax; ++n) {
            const double cw = psi_at_origin(n);
            if (cw == 0.0 || c[n] == std::complex<double>{}) continue;
            const std::complex<double> cn = c[n] * cw;
            a.push_back(cn * std::polar(1.0, -w * window.t1 * n));
            b.push_back(cn * std::polar(1.0, -w * window.t2 * n));
            idx.push_back(n);
            s_abs += std::abs(cn);
        }
        if (s_abs > 0.0) {
            long k = first_even_past(table.extent());
            double psi_sq = psi_at_origin(int(k) - 2);
            psi_sq *= psi_sq;
            PhaseIter e1(w * window.t1 * double(k), 2.0 * w * window.t1);
            PhaseIter e2(w * window.t2 * double(k), 2.0 * w * window.t2);
            while (true) {
                tail = delta_tail_bound(s_abs * s_abs, nmax, double(k), tau, w);
                if (tail <= policy.tol * std::max(value, 1e-300) || k > kExtensionCapExpect) break;
                psi_sq *= double(k - 1) / double(k);
                std::complex<double> sa{}, sb{};
                for (size_t j = 0; j < idx.size(); ++j) {
                    const double inv = 1.0 / double(k - idx[j]);
                    sa += a[j] * inv;
                    sb += b[j] * inv;
                }
                const std::complex<double> v =
                    std::complex<double>{0.0, 1.0 / w} * (e1.value * sa - e2.value * sb);
                value += psi_sq * std::norm(v);
                e1.advance();
                e2.advance();
                k += 2;
            }
        }
        maybe_throw(tail, value, w * tau, policy, "f12sq_expectation");
    } else {
        const int K = table.extent();
        double last = 0.0;
        for (int k = std::max(0, K - 1); k <= K; ++k) {
            double row = 0.0;
            for (int n = 0; n <= nmax; ++n)
                row += std::abs(c[n]) * std::abs(table(n, k)) *
                       std::min(tau, 2.0 / (w * std::max(1, std::abs(k - n))));
            last += row * row;
        }
        tail = 2.0 * last;
        maybe_throw(tail, value, w * tau, policy, "f12sq_expectation");
    }

    out.value = value;
    out.tail_estimate = tail;
    return out;
}

CorrelatorValue f12sq_eigenstate_closed(int n, double tau, const MatrixElementTable& table,
                                        const OscillatorConfig& config) {
    config.validate();
    if (n < 0 || n > table.extent())
        throw std::invalid_argument("f12sq_eigenstate_closed: n outside the table");
    if (tau < 0.0) throw std::invalid_argument("f12sq_eigenstate_closed: tau must be >= 0");
    const double w = config.omega;
    CorrelatorValue out{};
    out.window = {0.0, tau};
    out.coupling = table.coupling().kind;
    out.exactness = Exactness::Spectral;
    if (tau == 0.0) return out;

    const double mnn = table(n, n);
    double value = tau * tau * mnn * mnn;
    for (int k = 0; k <= table.extent(); ++k) {
        if (k == n) continue;
        const double mnk = table(n, k);
        if (mnk == 0.0) continue;
        const double g = double(n - k);
        value += (2.0 / (w * w)) * mnk * mnk * (1.0 - std::cos(w * tau * g)) / (g * g);
    }

    const TailPolicy policy{config.truncation.tail_tol, true};
    double tail = 0.0;
    if (table.is_delta()) {
        const double psin2 = psi_at_origin(n) * psi_at_origin(n);
        if (psin2 > 0.0) {
            long k = first_even_past(table.extent());
            double psi_sq = psi_at_origin(int(k) - 2);
            psi_sq *= psi_sq;
            while (true) {
                tail = delta_tail_bound(psin2, n, double(k), tau, w);
                if (tail <= policy.tol * std::max(value, 1e-300) || k > kExtensionCap1d) break;
                psi_sq *= double(k - 1) / double(k);
                const double g = double(n) - double(k);
                value += (2.0 / (w * w)) * psin2 * psi_sq * (1.0 - std::cos(w * tau * g)) /
                         (g * g);
                k += 2;
            }
        }
        maybe_throw(tail, value, w * tau, policy, "f12sq_eigenstate_closed");
    } else {
        const int K = table.extent();
        double last = 0.0;
        for (int k = std::max(0, K - 1); k <= K; ++k) {
            if (k == n) continue;
            const double d = std::min(tau, 2.0 / (w * std::abs(double(n - k))));
            last += table(n, k) * table(n, k) * d * d;
        }
        tail = 2.0 * last;
        maybe_throw(tail, value, w * tau, policy, "f12sq_eigenstate_closed");
    }

    out.value = value;
    out.tail_estimate = tail;
    return out;
}

CorrelatorValue f12sq_p1_closed(double tau, const OscillatorConfig& config) {
    config.validate();
    if (tau < 0.0) throw std::invalid_argument("f12sq_p1_closed: tau must be >= 0");
    const double w = config.omega;
    const double wt = w * tau;
    CorrelatorValue out{};
    out.value = (1.0 + 2.0 * wt * wt + 2.0 * wt * std::sin(2.0 * wt) - std::cos(2.0 * wt)) /
                (8.0 * w * w);
    out.window = {0.0, tau};
    out.coupling = CouplingKind::Delta;
    out.exactness = Exactness::CosApproximation;
    return out;
}

DwellTime dwell_time_sq(const StateVector& state, const MatrixElementTable& table,
                        const OscillatorConfig& config, DwellMethod method) {
    config.validate();
    if (method == DwellMethod::WindowPi) {
        const TimeWindow window{0.0, M_PI / config.omega};
        return {f12sq_expectation(state, window, table, config).value, method};
    }
    const int nmax = std::min(state.max_index(), table.extent());
    double s = 0.0;
    for (int n = 0; n <= nmax; ++n)
        s += std::norm(state.amplitudes[n]) * table(n, n) * table(n, n);
    const double pw = M_PI / config.omega;
    return {pw * pw * s, method};
}

double standard_correlator_map(const CorrelatorValue& f12sq, const DwellTime& dwell) {
    if (!(dwell.tau_d_sq > 1e-150))
        throw NumericalError("standard_correlator_map: dwell time below tolerance");
    return 1.0 - 2.0 * f12sq.value / dwell.tau_d_sq;
}

}  // namespace mlgosc
