#include <doctest.h>

#include "mlgosc/oscillator.hpp"
#include "oracles.hpp"

using namespace mlgosc;

TEST_CASE("psi_at_origin values and signs") {
    CHECK(psi_at_origin(1) == 0.0);
    CHECK(psi_at_origin(7) == 0.0);
    CHECK(psi_at_origin(0) == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-15));
    // |psi_n(0)|^2 = (n-1)!!/n!! / sqrt(pi)
    const double p0 = psi_at_origin(0) * psi_at_origin(0);
    CHECK(psi_at_origin(2) * psi_at_origin(2) == doctest::Approx(0.5 * p0).epsilon(1e-14));
    CHECK(psi_at_origin(4) * psi_at_origin(4) == doctest::Approx(0.375 * p0).epsilon(1e-14));
    // sign alternates as (-1)^(n/2)
    CHECK(psi_at_origin(2) < 0.0);
    CHECK(psi_at_origin(4) > 0.0);
    CHECK(psi_at_origin(6) < 0.0);
    CHECK_THROWS_AS(psi_at_origin(-1), std::invalid_argument);
}

TEST_CASE("psi_at_origin matches the Hermite recurrence evaluated at 0") {
    for (int n = 0; n <= 20; ++n) {
        const double lib = psi_at_origin(n) * psi_at_origin(n);
        const double ref = oracles::psi_n(n, 0.0) * oracles::psi_n(n, 0.0);
        CHECK(lib == doctest::Approx(ref).epsilon(1e-10));
    }
    // and the oracle's eigenfunctions really are normalized
    const auto rule = oracles::gauss_hermite(40);
    for (int n : {0, 4, 11, 20}) {
        double norm = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const double h = oracles::hermite_h(n, rule.nodes[i]);
            norm += rule.weights[i] * h * h;
        }
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("coherent amplitudes") {
    TruncationPolicy policy{30, 1e-10};

    SUBCASE("vacuum") {
        const StateVector s = coherent_amplitudes({0.0, 0.0}, policy);
        CHECK(s.amplitudes[0] == std::complex<double>{1.0, 0.0});
        CHECK(s.amplitudes.tail(30).norm() == 0.0);
    }
    SUBCASE("normalization and ratio") {
        const StateVector s = coherent_amplitudes({1.0, 0.0}, policy);
        CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
        const std::complex<double> alpha{0.3, -1.2};
        const StateVector t = coherent_amplitudes(alpha, policy);
        CHECK(std::abs(t.amplitudes[1] / t.amplitudes[0] - alpha) < 1e-14);
    }
    SUBCASE("mean occupation and phase-space means") {
        const double x0 = 0.7, p0 = -1.3, omega = 2.0;
        const std::complex<double> alpha = coherent_alpha(x0, p0, omega);
        const StateVector s = coherent_amplitudes(alpha, {60, 1e-12});
        CHECK(s.mean_level() == doctest::Approx(std::norm(alpha)).epsilon(1e-10));
        CHECK(s.mean_x(omega) == doctest::Approx(x0).epsilon(1e-9));
        CHECK(s.mean_p(omega) == doctest::Approx(p0).epsilon(1e-9));
    }
    SUBCASE("insufficient truncation") {
        CHECK_THROWS_AS(coherent_amplitudes({4.0, 0.0}, TruncationPolicy{8, 1e-8}),
                        TruncationError);
    }
}

TEST_CASE("apply_momentum ladder algebra") {
    OscillatorConfig config{};

    SUBCASE("vacuum maps to the first level") {
        const StateVector out = apply_momentum(StateVector::fock(0, 6), config);
        CHECK(std::abs(out.amplitudes[1] - 1.0) < 1e-14);
    }
    SUBCASE("p|1> is the (|0>, |2>) superposition") {
        const StateVector out = apply_momentum(StateVector::fock(1, 6), config);
        CHECK(std::abs(out.amplitudes[0]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
        CHECK(std::abs(out.amplitudes[2]) ==
              doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
        // relative sign: c2/c0 = -sqrt(2)
        CHECK((out.amplitudes[2] / out.amplitudes[0]).real() ==
              doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
        CHECK(out.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("parity alternation") {
        StateVector odd{Eigen::VectorXcd::Zero(8)};
        odd.amplitudes[1] = std::complex<double>(0.6, 0.1);
        odd.amplitudes[3] = std::complex<double>(-0.2, 0.7);
        odd.amplitudes /= odd.amplitudes.norm();
        const StateVector out = apply_momentum(odd, config);
        for (int n = 1; n <= out.max_index(); n += 2) CHECK(std::abs(out.amplitudes[n]) == 0.0);
    }
    SUBCASE("real input gives a purely imaginary raw image") {
        // after phase canonicalization that means real output amplitudes
        StateVector real_state{Eigen::VectorXcd::Zero(5)};
        real_state.amplitudes[0] = 0.8;
        real_state.amplitudes[3] = -0.6;
        const StateVector out = apply_momentum(real_state, config);
        for (int n = 0; n <= out.max_index(); ++n)
            CHECK(std::abs(out.amplitudes[n].imag()) < 1e-14);
    }
    SUBCASE("zero state rejected") {
        StateVector zero{Eigen::VectorXcd::Zero(4)};
        CHECK_THROWS_AS(apply_momentum(zero, config), NumericalError);
    }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(OscillatorConfig{-1.0, {}}.validate(), std::invalid_argument);
    CHECK_THROWS_AS((TruncationPolicy{1, 1e-8}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((TruncationPolicy{40, 0.0}).validate(), std::invalid_argument);
}
