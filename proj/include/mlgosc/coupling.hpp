#pragma once
// Detector-coupling matrix elements M_nk and the window time kernels I and G.

#include <complex>
#include <iosfwd>
#include <memory>

#include <Eigen/Dense>

#include "mlgosc/oscillator.hpp"

namespace mlgosc {

enum class CouplingKind { Delta, Gaussian };

struct CouplingSpec {
    CouplingKind kind = CouplingKind::Delta;
    double sigma = 0.0;  // window width in oscillator lengths, Gaussian only

    static CouplingSpec delta() { return {CouplingKind::Delta, 0.0}; }
    static CouplingSpec gaussian(double sigma) { return {CouplingKind::Gaussian, sigma}; }
    void validate() const;
};

struct TimeWindow {
    double t1 = 0.0;
    double t2 = 0.0;

    double length() const { return t2 - t1; }
    void validate() const;  // t2 >= t1, finite
};

// Dense symmetric table of coupling matrix elements, 0 <= n,k <= extent.
// Immutable once built; safe for concurrent readers. For delta coupling the
// rank-one factors psi_n(0) are kept so spectral sums can be extended past
// the stored extent analytically.
class MatrixElementTable {
  public:
    MatrixElementTable(CouplingSpec spec, Eigen::MatrixXd entries, Eigen::VectorXd delta_factors);

    double operator()(int n, int k) const { return entries_(n, k); }
    int extent() const { return static_cast<int>(entries_.rows()) - 1; }
    const CouplingSpec& coupling() const { return spec_; }
    bool is_delta() const { return spec_.kind == CouplingKind::Delta; }
    const Eigen::MatrixXd& entries() const { return entries_; }
    Eigen::VectorXd diagonal() const { return entries_.diagonal(); }

  private:
    CouplingSpec spec_;
    Eigen::MatrixXd entries_;
    Eigen::VectorXd delta_factors_;  // empty for Gaussian
};

// M_nk = psi_n(0) psi_k(0); zero unless n and k are both even.
MatrixElementTable delta_matrix_elements(const OscillatorConfig& config);
MatrixElementTable delta_matrix_elements(const OscillatorConfig& config, int extent);

// Gaussian window f(x) = exp(-x^2/(2 sigma^2)) / (sigma sqrt(2 pi)), unit
// integral so the sigma->0 limit recovers the delta elements. Zero for n+k
// odd. Computed by double power-series coefficient extraction from the
// bivariate generating function; throws NumericalError if the summation
// loses more than half the working precision.
MatrixElementTable gaussian_matrix_elements(double sigma, const OscillatorConfig& config);
MatrixElementTable gaussian_matrix_elements(double sigma, const OscillatorConfig& config, int extent);

MatrixElementTable build_table(const CouplingSpec& spec, const OscillatorConfig& config, int extent);

// Process-wide cache keyed on (coupling, extent); tables are shared read-only.
std::shared_ptr<const MatrixElementTable> cached_table(const CouplingSpec& spec,
                                                       const OscillatorConfig& config, int extent);

// I_lk(t1,t2) = i(e^{i w t1 (l-k)} - e^{i w t2 (l-k)})/(w(l-k)), or t2-t1 on the diagonal.
std::complex<double> time_kernel_I(int l, int k, const TimeWindow& window,
                                   const OscillatorConfig& config);

// G_nlk = I_lk * I_kn.
std::complex<double> product_kernel_G(int n, int l, int k, const TimeWindow& window,
                                      const OscillatorConfig& config);

// CSV with header "n,k,M", 17 significant digits.
void export_table_csv(const MatrixElementTable& table, std::ostream& os);

}  // namespace mlgosc
