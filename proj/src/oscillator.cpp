#include "mlgosc/oscillator.hpp"

#include <cmath>

namespace mlgosc {

void TruncationPolicy::validate() const {
    if (max_level < 2) throw std::invalid_argument("truncation.max_level must be >= 2");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("truncation.tail_tol must be > 0");
}

void OscillatorConfig::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("omega must be positive and finite");
    truncation.validate();
}

double StateVector::mean_level() const {
    double s = 0.0;
    for (int n = 0; n <= max_index(); ++n) s += n * std::norm(amplitudes[n]);
    return s;
}

// x = (a + a^dag)/sqrt(2 w): <x> = sqrt(2/w) Re sum_n sqrt(n+1) c_n^* c_{n+1}
double StateVector::mean_x(double omega) const {
    std::complex<double> s{};
    for (int n = 0; n + 1 <= max_index(); ++n)
        s += std::conj(amplitudes[n]) * amplitudes[n + 1] * std::sqrt(double(n + 1));
    return std::sqrt(2.0 / omega) * s.real();
}

// p = i sqrt(w/2)(a^dag - a): <p> = sqrt(2 w) Im sum_n sqrt(n+1) c_n^* c_{n+1}
double StateVector::mean_p(double omega) const {
    std::complex<double> s{};
    for (int n = 0; n + 1 <= max_index(); ++n)
        s += std::conj(amplitudes[n]) * amplitudes[n + 1] * std::sqrt(double(n + 1));
    return std::sqrt(2.0 * omega) * s.imag();
}

StateVector StateVector::fock(int n, int max_level) {
    if (n < 0 || n > max_level) throw std::invalid_argument("fock level outside truncation");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(max_level + 1);
    c[n] = 1.0;
    return {std::move(c)};
}

double psi_at_origin(int n) {
    if (n < 0) throw std::invalid_argument("psi_at_origin: n must be >= 0");
    if (n % 2 == 1) return 0.0;
    // (n-1)!!/n!! as a product of (k-1)/k; every factor < 1, no overflow.
    double ratio = 1.0;
    for (int k = 2; k <= n; k += 2) ratio *= double(k - 1) / double(k);
    const double sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::pow(M_PI, -0.25) * std::sqrt(ratio);
}

std::complex<double> coherent_alpha(double x0, double p0, double omega) {
    return {std::sqrt(omega) * x0 / std::sqrt(2.0), p0 / std::sqrt(omega) / std::sqrt(2.0)};
}

StateVector coherent_amplitudes(std::complex<double> alpha, const TruncationPolicy& policy) {
    policy.validate();
    const int nmax = policy.max_level;
    Eigen::VectorXcd c(nmax + 1);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= nmax; ++n) c[n] = c[n - 1] * alpha / std::sqrt(double(n));
    const double kept = c.squaredNorm();
    const double tail = std::max(0.0, 1.0 - kept);
    if (tail > policy.tail_tol)
        throw TruncationError("coherent_amplitudes: dropped tail " + std::to_string(tail) +
                              " exceeds tail_tol at max_level " + std::to_string(nmax) +
                              " for |alpha| = " + std::to_string(std::abs(alpha)));
    return {std::move(c)};
}

StateVector apply_momentum(const StateVector& phi, const OscillatorConfig& config) {
    config.validate();
    const int nmax = phi.max_index();
    const auto& c = phi.amplitudes;
    // (p phi)_n = i sqrt(w/2) (sqrt(n) c_{n-1} - sqrt(n+1) c_{n+1})
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(nmax + 2);
    const std::complex<double> pref{0.0, std::sqrt(config.omega / 2.0)};
    for (int n = 0; n <= nmax + 1; ++n) {
        std::complex<double> v{};
        if (n >= 1) v += std::sqrt(double(n)) * c[n - 1];
        if (n + 1 <= nmax) v -= std::sqrt(double(n + 1)) * c[n + 1];
        b[n] = pref * v;
    }
    const double norm = b.norm();
    if (norm < 1e-14 * std::sqrt(config.omega) * std::max(1.0, phi.amplitudes.norm()))
        throw NumericalError("apply_momentum: p|phi> vanishes within tolerance");
    b /= norm;
    // strip the global phase: rotate the first non-negligible amplitude real positive
    for (int n = 0; n <= nmax + 1; ++n) {
        if (std::abs(b[n]) > 1e-12) {
            b *= std::conj(b[n]) / std::abs(b[n]);
            break;
        }
    }
    return {std::move(b)};
}

}  // namespace mlgosc
