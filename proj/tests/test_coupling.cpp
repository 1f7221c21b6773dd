#include <doctest.h>

#include <random>
#include <sstream>

#include "mlgosc/coupling.hpp"
#include "oracles.hpp"

using namespace mlgosc;

namespace {
const OscillatorConfig kConfig{};
}

TEST_CASE("delta matrix elements") {
    const auto table = delta_matrix_elements(kConfig, 24);
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    CHECK(table(0, 0) == doctest::Approx(inv_sqrt_pi).epsilon(1e-15));
    CHECK(table(0, 1) == 0.0);
    CHECK(table(0, 2) == doctest::Approx(-inv_sqrt_pi / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(table(2, 2) == doctest::Approx(0.5 * inv_sqrt_pi).epsilon(1e-14));
    for (int n = 0; n <= 20; ++n)
        for (int k = 0; k <= 20; ++k) {
            CHECK(table(n, k) == table(k, n));
            if (n % 2 == 1 || k % 2 == 1) CHECK(table(n, k) == 0.0);
            CHECK(table(n, k) ==
                  doctest::Approx(psi_at_origin(n) * psi_at_origin(k)).epsilon(1e-14));
        }
}

TEST_CASE("gaussian matrix elements against quadrature") {
    for (double sigma : {0.25, 0.5, 1.0}) {
        const auto table = gaussian_matrix_elements(sigma, kConfig, 20);
        for (int n = 0; n <= 20; ++n)
            for (int k = n; k <= 20; ++k) {
                if ((n + k) % 2 == 1) {
                    CHECK(table(n, k) == 0.0);
                    continue;
                }
                const double ref = oracles::gaussian_element_quad(n, k, sigma);
                CHECK(table(n, k) == doctest::Approx(ref).epsilon(1e-8));
            }
    }
}

TEST_CASE("gaussian closed-form diagonal and delta limit") {
    for (double sigma : {1e-3, 0.2, 0.7}) {
        const auto table = gaussian_matrix_elements(sigma, kConfig, 8);
        const double expected = 1.0 / std::sqrt(M_PI * (1.0 + 2.0 * sigma * sigma));
        CHECK(table(0, 0) == doctest::Approx(expected).epsilon(1e-13));
    }
    // odd-odd entries are nonzero for a smooth window, unlike the point coupling
    const auto wide = gaussian_matrix_elements(0.5, kConfig, 8);
    CHECK(wide(1, 1) > 0.0);
    CHECK(wide(1, 1) ==
          doctest::Approx(oracles::gaussian_element_quad(1, 1, 0.5)).epsilon(1e-12));

    const auto narrow = gaussian_matrix_elements(1e-3, kConfig, 20);
    const auto delta = delta_matrix_elements(kConfig, 20);
    for (int n = 0; n <= 20; ++n)
        for (int k = 0; k <= 20; ++k)
            CHECK(std::abs(narrow(n, k) - delta(n, k)) < 1e-5);
}

TEST_CASE("time kernel I") {
    const TimeWindow w{0.3, 1.7};
    CHECK(time_kernel_I(5, 5, w, kConfig) == std::complex<double>{w.length(), 0.0});

    SUBCASE("even gaps vanish at omega*tau = pi") {
        const TimeWindow half_period{0.2, 0.2 + M_PI};
        CHECK(std::abs(time_kernel_I(0, 2, half_period, kConfig)) < 1e-15);
        CHECK(std::abs(time_kernel_I(6, 2, half_period, kConfig)) < 1e-14);
        // odd gaps survive
        CHECK(std::abs(time_kernel_I(1, 2, half_period, kConfig)) > 0.5);
    }
    SUBCASE("small-window limit") {
        const TimeWindow tiny{0.0, 1e-6};
        CHECK(time_kernel_I(0, 2, tiny, kConfig).real() == doctest::Approx(1e-6).epsilon(1e-6));
    }
    SUBCASE("modulus bound and translation covariance") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(0.0, 3.0);
        for (int trial = 0; trial < 200; ++trial) {
            const double t1 = u(rng), len = u(rng), shift = u(rng);
            const int l = int(u(rng) * 3), k = int(u(rng) * 3) + 4;
            const TimeWindow w1{t1, t1 + len};
            const TimeWindow w2{t1 + shift, t1 + shift + len};
            const auto i1 = time_kernel_I(l, k, w1, kConfig);
            CHECK(std::abs(i1) <= std::min(len, 2.0 / std::abs(double(l - k))) + 1e-12);
            CHECK(std::abs(i1) ==
                  doctest::Approx(std::abs(time_kernel_I(l, k, w2, kConfig))).epsilon(1e-10));
        }
    }
}

TEST_CASE("product kernel G") {
    const TimeWindow w{0.1, 0.9};
    const auto diag = product_kernel_G(3, 3, 3, w, kConfig);
    CHECK(diag.real() == doctest::Approx(w.length() * w.length()).epsilon(1e-14));
    CHECK(diag.imag() == 0.0);

    const TimeWindow half_period{0.0, M_PI};
    CHECK(std::abs(product_kernel_G(0, 2, 4, half_period, kConfig)) < 1e-14);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 2.5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = int(u(rng) * 2), l = int(u(rng) * 3), k = int(u(rng) * 4);
        const TimeWindow win{u(rng), u(rng) + 3.0};
        const auto g1 = product_kernel_G(n, l, k, win, kConfig);
        const auto g2 = product_kernel_G(l, n, k, win, kConfig);
        CHECK(std::abs(g1 - std::conj(g2)) < 1e-13);
        // G_nnk is |I_nk|^2
        const auto gnn = product_kernel_G(n, n, k, win, kConfig);
        CHECK(gnn.imag() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(gnn.real() >= -1e-15);
    }
}

TEST_CASE("table CSV export round-trips at full precision") {
    const auto table = gaussian_matrix_elements(0.37, kConfig, 5);
    std::ostringstream os;
    export_table_csv(table, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "n,k,M");
    int rows = 0;
    std::string line;
    while (std::getline(is, line)) {
        int n, k;
        double m;
        CHECK(std::sscanf(line.c_str(), "%d,%d,%lg", &n, &k, &m) == 3);
        CHECK(m == table(n, k));  // bit-identical after the 17-digit round trip
        ++rows;
    }
    CHECK(rows == 36);
}

TEST_CASE("table cache shares instances") {
    const auto a = cached_table(CouplingSpec::gaussian(0.41), kConfig, 12);
    const auto b = cached_table(CouplingSpec::gaussian(0.41), kConfig, 12);
    CHECK(a.get() == b.get());
    const auto c = cached_table(CouplingSpec::delta(), kConfig, 12);
    CHECK(a.get() != c.get());
}

TEST_CASE("coupling validation") {
    CHECK_THROWS_AS(CouplingSpec::gaussian(-0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS((TimeWindow{1.0, 0.5}).validate(), std::invalid_argument);
}
