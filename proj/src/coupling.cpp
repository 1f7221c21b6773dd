#include "mlgosc/coupling.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <tuple>

namespace mlgosc {

void CouplingSpec::validate() const {
    if (kind == CouplingKind::Gaussian && !(sigma > 0.0 && std::isfinite(sigma)))
        throw std::invalid_argument("gaussian coupling requires sigma > 0");
}

void TimeWindow::validate() const {
    if (!std::isfinite(t1) || !std::isfinite(t2))
        throw std::invalid_argument("window times must be finite");
    if (t2 < t1) throw std::invalid_argument("window requires t2 >= t1");
}

MatrixElementTable::MatrixElementTable(CouplingSpec spec, Eigen::MatrixXd entries,
                                       Eigen::VectorXd delta_factors)
    : spec_(spec), entries_(std::move(entries)), delta_factors_(std::move(delta_factors)) {}

MatrixElementTable delta_matrix_elements(const OscillatorConfig& config) {
    return delta_matrix_elements(config, config.truncation.max_level);
}

MatrixElementTable delta_matrix_elements(const OscillatorConfig& config, int extent) {
    config.validate();
    if (extent < 0) throw std::invalid_argument("table extent must be >= 0");
    Eigen::VectorXd psi(extent + 1);
    for (int n = 0; n <= extent; ++n) psi[n] = psi_at_origin(n);
    Eigen::MatrixXd m = psi * psi.transpose();
    return MatrixElementTable(CouplingSpec::delta(), std::move(m), std::move(psi));
}

namespace {

// Coefficient extraction from exp(a q1 q2 + b (q1^2 + q2^2)) with
// a = 4 s^2/(1+2s^2), b = -1/(1+2s^2):
//   M_nm = sqrt(n! m! / (pi 2^{n+m})) / sqrt(1+2s^2)
//          * sum_j a^j b^{(n-j)/2+(m-j)/2} / (j! ((n-j)/2)! ((m-j)/2)!)
// over j <= min(n,m) with j = n = m (mod 2). Terms decay (|b| < 1), but the
// alternating b powers are monitored for cancellation anyway.
double gaussian_element(int n, int m, double sigma, double* condition) {
    if ((n + m) % 2 == 1) return 0.0;
    const long double s2 = (long double)(sigma) * sigma;
    const long double a = 4.0L * s2 / (1.0L + 2.0L * s2);
    const long double b = -1.0L / (1.0L + 2.0L * s2);
    long double sum = 0.0L, max_term = 0.0L;
    for (int j = n % 2; j <= std::min(n, m); j += 2) {
        const int r = (n - j) / 2, t = (m - j) / 2;
        const long double lg =
            lgammal(j + 1.0L) + lgammal(r + 1.0L) + lgammal(t + 1.0L);
        long double term = (j > 0 ? powl(a, j) : 1.0L) * expl(-lg) * powl(b, r + t);
        sum += term;
        max_term = std::max(max_term, fabsl(term));
    }
    if (sum != 0.0L && condition)
        *condition = std::max(*condition, (double)(max_term / fabsl(sum)));
    const long double log_pref =
        0.5L * (lgammal(n + 1.0L) + lgammal(m + 1.0L)) - 0.5L * (n + m) * logl(2.0L);
    const long double pref = expl(log_pref) / sqrtl((long double)M_PI);
    return (double)(pref / sqrtl(1.0L + 2.0L * s2) * sum);
}

}  // namespace

MatrixElementTable gaussian_matrix_elements(double sigma, const OscillatorConfig& config) {
    return gaussian_matrix_elements(sigma, config, config.truncation.max_level);
}

MatrixElementTable gaussian_matrix_elements(double sigma, const OscillatorConfig& config,
                                            int extent) {
    config.validate();
    CouplingSpec spec = CouplingSpec::gaussian(sigma);
    spec.validate();
    if (extent < 0) throw std::invalid_argument("table extent must be >= 0");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(extent + 1, extent + 1);
    double condition = 0.0;
    for (int n = 0; n <= extent; ++n)
        for (int k = n; k <= extent; ++k) {
            const double v = gaussian_element(n, k, sigma, &condition);
            m(n, k) = v;
            m(k, n) = v;
        }
    if (condition > 1e8)
        throw NumericalError("gaussian_matrix_elements: series cancellation lost more than half "
                             "the working precision (sigma*extent too large)");
    return MatrixElementTable(spec, std::move(m), Eigen::VectorXd());
}

MatrixElementTable build_table(const CouplingSpec& spec, const OscillatorConfig& config,
                               int extent) {
    spec.validate();
    return spec.kind == CouplingKind::Delta ? delta_matrix_elements(config, extent)
                                            : gaussian_matrix_elements(spec.sigma, config, extent);
}

std::shared_ptr<const MatrixElementTable> cached_table(const CouplingSpec& spec,
                                                       const OscillatorConfig& config,
                                                       int extent) {
    using Key = std::tuple<int, double, int>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const MatrixElementTable>> cache;
    const Key key{static_cast<int>(spec.kind), spec.sigma, extent};
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const MatrixElementTable>(build_table(spec, config, extent));
    cache.emplace(key, table);
    return table;
}

std::complex<double> time_kernel_I(int l, int k, const TimeWindow& window,
                                   const OscillatorConfig& config) {
    window.validate();
    if (l == k) return {window.length(), 0.0};
    const double g = config.omega * (l - k);
    const std::complex<double> e1 = std::polar(1.0, g * window.t1);
    const std::complex<double> e2 = std::polar(1.0, g * window.t2);
    return std::complex<double>{0.0, 1.0} * (e1 - e2) / g;
}

std::complex<double> product_kernel_G(int n, int l, int k, const TimeWindow& window,
                                      const OscillatorConfig& config) {
    return time_kernel_I(l, k, window, config) * time_kernel_I(k, n, window, config);
}

void export_table_csv(const MatrixElementTable& table, std::ostream& os) {
    os << "n,k,M\n";
    char buf[64];
    for (int n = 0; n <= table.extent(); ++n)
        for (int k = 0; k <= table.extent(); ++k) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", n, k, table(n, k));
            os << buf;
        }
}

}  // namespace mlgosc
