#include <doctest.h>

#include <random>

#include "mlgosc/correlators.hpp"
#include "oracles.hpp"

using namespace mlgosc;

namespace {

// exact truncated sums: loose tail target disables the k extension
OscillatorConfig fixed_cutoff_config(int max_level, double omega = 1.0) {
    return {omega, {std::max(2, max_level), 1e9}};
}

const OscillatorConfig kDefault{};

StateVector p1_state(int max_level) {
    return apply_momentum(StateVector::fock(1, max_level), kDefault);
}

}  // namespace

TEST_CASE("f12sq_element basics") {
    const auto cfg = fixed_cutoff_config(8);
    const auto table = delta_matrix_elements(cfg, 8);

    SUBCASE("half-period window keeps only the diagonal") {
        const auto e = f12sq_element(0, 0, {0.0, M_PI}, table, cfg);
        CHECK(e.value.real() == doctest::Approx(M_PI).epsilon(1e-12));
        CHECK(std::abs(e.value.imag()) < 1e-14);
    }
    SUBCASE("zero-length window") {
        const auto e = f12sq_element(3, 3, {0.7, 0.7}, table, cfg);
        CHECK(e.value == std::complex<double>{});
        CHECK(e.tail_estimate == 0.0);
    }
    SUBCASE("hermiticity") {
        const TimeWindow w{0.2, 1.4};
        const auto a = f12sq_element(0, 2, w, table, cfg);
        const auto b = f12sq_element(2, 0, w, table, cfg);
        CHECK(std::abs(a.value - std::conj(b.value)) < 1e-14);
    }
    SUBCASE("index bounds") {
        CHECK_THROWS_AS(f12sq_element(9, 0, {0.0, 1.0}, table, cfg), std::invalid_argument);
    }
}

TEST_CASE("ground-state curve matches the k<=4 closed form") {
    for (double omega : {0.5, 1.0, 2.0}) {
        const auto cfg = fixed_cutoff_config(4, omega);
        const auto table = delta_matrix_elements(cfg, 4);
        for (int i = 1; i <= 40; ++i) {
            const double wt = 2.0 * M_PI * i / 40.0;
            const double tau = wt / omega;
            const auto v = f12sq_eigenstate_closed(0, tau, table, cfg);
            CHECK(v.value == doctest::Approx(oracles::gsf12(tau, omega)).epsilon(1e-13));
            // and the generic machinery agrees through a shifted window
            const auto e = f12sq_expectation(StateVector::fock(0, 4), {0.4, 0.4 + tau}, table, cfg);
            CHECK(e.value == doctest::Approx(v.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("k = 6 cosine coefficient of the ground-state series") {
    const auto table = delta_matrix_elements(kDefault, 8);
    const double coeff = -2.0 * table(0, 6) * table(0, 6) / 36.0;
    CHECK(coeff == doctest::Approx(-10.0 / (576.0 * M_PI)).epsilon(1e-14));
    CHECK(coeff == doctest::Approx(-0.0055).epsilon(0.01));
}

TEST_CASE("eigenstate closed form") {
    const auto cfg = kDefault;
    const auto table = delta_matrix_elements(cfg, 48);

    SUBCASE("zero interval") {
        CHECK(f12sq_eigenstate_closed(0, 0.0, table, cfg).value == 0.0);
    }
    SUBCASE("stationarity: any window of the same length") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(0.0, 4.0);
        for (int n : {0, 2, 4}) {
            for (int trial = 0; trial < 5; ++trial) {
                const double tau = 0.3 + u(rng), s = u(rng);
                const auto closed = f12sq_eigenstate_closed(n, tau, table, cfg);
                const auto windowed = f12sq_element(n, n, {s, s + tau}, table, cfg);
                CHECK(closed.value == doctest::Approx(windowed.value.real()).epsilon(1e-10));
            }
        }
    }
    SUBCASE("period-pi structure: only the secular term survives") {
        for (int n : {0, 2, 4}) {
            for (int j : {1, 2, 3}) {
                const double tau = j * M_PI;
                const auto v = f12sq_eigenstate_closed(n, tau, table, cfg);
                const double expected = tau * tau * table(n, n) * table(n, n);
                CHECK(v.value == doctest::Approx(expected).epsilon(1e-11));
            }
        }
    }
    SUBCASE("odd levels vanish under the point coupling") {
        CHECK(f12sq_eigenstate_closed(1, 1.3, table, cfg).value == 0.0);
        CHECK(f12sq_eigenstate_closed(3, 0.7, table, cfg).value == 0.0);
    }
}

TEST_CASE("expectation reduces to the diagonal element for Fock states") {
    const auto cfg = fixed_cutoff_config(10);
    const auto table = delta_matrix_elements(cfg, 10);
    const TimeWindow w{0.0, 1.1};
    const auto direct = f12sq_element(2, 2, w, table, cfg);
    const auto via_state = f12sq_expectation(StateVector::fock(2, 10), w, table, cfg);
    CHECK(via_state.value == doctest::Approx(direct.value.real()).epsilon(1e-13));
}

TEST_CASE("p1 closed form") {
    SUBCASE("anchor values") {
        CHECK(f12sq_p1_closed(0.0, kDefault).value == 0.0);
        for (double omega : {0.5, 1.0, 2.0}) {
            const OscillatorConfig cfg{omega, {}};
            const auto v = f12sq_p1_closed(M_PI / omega, cfg);
            CHECK(v.value == doctest::Approx(M_PI * M_PI / (4.0 * omega * omega)).epsilon(1e-14));
        }
        CHECK(f12sq_p1_closed(M_PI / 2.0, kDefault).value ==
              doctest::Approx(0.25 + M_PI * M_PI / 16.0).epsilon(1e-14));
    }
    SUBCASE("exactness labels distinguish the two routes") {
        CHECK(f12sq_p1_closed(1.0, kDefault).exactness == Exactness::CosApproximation);
        const auto table = delta_matrix_elements(kDefault, 42);
        const auto spectral = f12sq_expectation(p1_state(40), {0.0, 1.0}, table, kDefault);
        CHECK(spectral.exactness == Exactness::Spectral);
    }
    SUBCASE("exact spectral value at the half period") {
        const auto table = delta_matrix_elements(kDefault, 42);
        const auto v = f12sq_expectation(p1_state(40), {0.0, M_PI}, table, kDefault);
        CHECK(v.value == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
        CHECK(f12sq_p1_closed(M_PI, kDefault).value / v.value ==
              doctest::Approx(M_PI / 2.0).epsilon(1e-10));
    }
}

TEST_CASE("dwell times") {
    const auto table = delta_matrix_elements(kDefault, 42);

    SUBCASE("eigenstate anchors") {
        const auto d0 = dwell_time_sq(StateVector::fock(0, 40), table, kDefault,
                                      DwellMethod::Spectral);
        CHECK(d0.tau_d_sq == doctest::Approx(M_PI).epsilon(1e-13));
        const auto d2 = dwell_time_sq(StateVector::fock(2, 40), table, kDefault,
                                      DwellMethod::Spectral);
        CHECK(d2.tau_d_sq == doctest::Approx(M_PI / 4.0).epsilon(1e-13));
        const auto dp = dwell_time_sq(p1_state(40), table, kDefault, DwellMethod::Spectral);
        CHECK(dp.tau_d_sq == doctest::Approx(M_PI / 2.0).epsilon(1e-13));
    }
    SUBCASE("the two methods agree for any even coupling") {
        const auto gauss = gaussian_matrix_elements(0.5, kDefault, 40);
        for (unsigned seed : {1u, 2u}) {
            StateVector state{oracles::random_state(18, seed)};
            const double spectral_d =
                dwell_time_sq(state, table, kDefault, DwellMethod::Spectral).tau_d_sq;
            const double window_d =
                dwell_time_sq(state, table, kDefault, DwellMethod::WindowPi).tau_d_sq;
            CHECK(window_d == doctest::Approx(spectral_d).epsilon(1e-10));
            const double gs = dwell_time_sq(state, gauss, kDefault, DwellMethod::Spectral).tau_d_sq;
            const double gw = dwell_time_sq(state, gauss, kDefault, DwellMethod::WindowPi).tau_d_sq;
            CHECK(gw == doctest::Approx(gs).epsilon(1e-10));
        }
    }
    SUBCASE("scaling with omega at fixed omega*tau") {
        for (double omega : {0.5, 2.0}) {
            const OscillatorConfig cfg{omega, {}};
            const auto t = delta_matrix_elements(cfg, 42);
            const auto d = dwell_time_sq(StateVector::fock(0, 40), t, cfg, DwellMethod::Spectral);
            CHECK(d.tau_d_sq == doctest::Approx(M_PI / (omega * omega)).epsilon(1e-12));
        }
    }
}

TEST_CASE("standard correlator map") {
    CorrelatorValue f{};
    const DwellTime dwell{2.0, DwellMethod::Spectral};
    f.value = 0.0;
    CHECK(standard_correlator_map(f, dwell) == 1.0);
    f.value = 2.0;
    CHECK(standard_correlator_map(f, dwell) == doctest::Approx(-1.0));
    f.value = 1.0;
    CHECK(standard_correlator_map(f, dwell) == doctest::Approx(0.0));
    CHECK_THROWS_AS(standard_correlator_map(f, DwellTime{0.0, DwellMethod::Spectral}),
                    NumericalError);
}

TEST_CASE("positivity and stationarity properties") {
    const auto table = delta_matrix_elements(kDefault, 44);
    const auto gauss = gaussian_matrix_elements(0.5, kDefault, 44);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 3.0);

    for (unsigned seed = 0; seed < 6; ++seed) {
        StateVector state{oracles::random_state(16, 100 + seed)};
        const double t1 = u(rng), len = 0.05 + u(rng);
        for (const auto* t : {&table, &gauss}) {
            const auto v = f12sq_expectation(state, {t1, t1 + len}, *t, kDefault);
            CHECK(v.value >= -v.tail_estimate);
        }
    }
    // window-start independence for eigenstates
    for (int n : {0, 2}) {
        const auto a = f12sq_expectation(StateVector::fock(n, 16), {0.0, 1.3}, table, kDefault);
        const auto b = f12sq_expectation(StateVector::fock(n, 16), {2.2, 3.5}, table, kDefault);
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));
    }
}

TEST_CASE("triangle bound from operator additivity") {
    const auto table = delta_matrix_elements(kDefault, 44);
    const auto gauss = gaussian_matrix_elements(0.4, kDefault, 44);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.1, 1.4);
    for (unsigned seed = 0; seed < 4; ++seed) {
        StateVector state{oracles::random_state(14, 300 + seed)};
        const double t1 = u(rng), t2 = t1 + u(rng), t3 = t2 + u(rng);
        for (const auto* t : {&table, &gauss}) {
            const double f12 = f12sq_expectation(state, {t1, t2}, *t, kDefault).value;
            const double f23 = f12sq_expectation(state, {t2, t3}, *t, kDefault).value;
            const double f13 = f12sq_expectation(state, {t1, t3}, *t, kDefault).value;
            const double rhs = std::sqrt(f12) + std::sqrt(f23);
            CHECK(f13 <= rhs * rhs + 1e-10);
        }
    }
}

TEST_CASE("gaussian-coupling expectation matches direct 2D time quadrature") {
    const OscillatorConfig cfg = fixed_cutoff_config(12);
    const auto gauss = gaussian_matrix_elements(0.5, cfg, 12);
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(0.2, 1.2);
    for (unsigned seed = 0; seed < 3; ++seed) {
        const Eigen::VectorXcd c = oracles::random_state(12, 500 + seed);
        const double t1 = u(rng), len = u(rng);
        const auto lib = f12sq_expectation(StateVector{c}, {t1, t1 + len}, gauss, cfg);
        const double ref = oracles::f12sq_quadrature(c, t1, t1 + len, gauss, cfg.omega);
        CHECK(lib.value == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("odd states are invisible to the point coupling") {
    const auto table = delta_matrix_elements(kDefault, 42);
    for (int n : {1, 3}) {
        const auto v =
            f12sq_expectation(StateVector::fock(n, 12), {0.0, 2.1}, table, kDefault);
        CHECK(v.value == 0.0);
    }
}

TEST_CASE("omega scaling of time^2 results at fixed omega*tau") {
    for (int n : {0, 2}) {
        for (double wt : {0.7, 2.2}) {
            const OscillatorConfig c1{1.0, {}};
            const OscillatorConfig c2{2.0, {}};
            const auto t1 = delta_matrix_elements(c1, 40);
            const auto t2 = delta_matrix_elements(c2, 40);
            const double v1 = f12sq_eigenstate_closed(n, wt, t1, c1).value;
            const double v2 = f12sq_eigenstate_closed(n, wt / 2.0, t2, c2).value;
            CHECK(v1 == doctest::Approx(4.0 * v2).epsilon(1e-12));
        }
    }
}

TEST_CASE("truncation error paths") {
    SUBCASE("gaussian tables cannot extend, tight tolerance throws") {
        OscillatorConfig cfg{1.0, {8, 1e-14}};
        const auto gauss = gaussian_matrix_elements(0.5, cfg, 8);
        CHECK_THROWS_AS(f12sq_eigenstate_closed(0, 1.0, gauss, cfg), TruncationError);
    }
    SUBCASE("tiny windows report an enlarged tail instead of failing") {
        OscillatorConfig cfg{1.0, {40, 1e-8}};
        const auto table = delta_matrix_elements(cfg, 40);
        const auto v = f12sq_eigenstate_closed(0, 5e-4, table, cfg);
        CHECK(v.value > 0.0);
        CHECK(v.tail_estimate > cfg.truncation.tail_tol * v.value);
    }
}
