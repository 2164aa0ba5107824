#include "oracles.hpp"

#include "tavis/angle.hpp"
#include "tavis/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

using namespace tavis;

namespace {

constexpr double kPi = std::numbers::pi;

// Trapezoid over the largest dense eigenvalue; smooth and Gaussian-decaying, so
// the rule converges spectrally.
double trapezoid_unit_integral(int n, double delta, int points = 8000) {
    const tavis::PulseConfig cfg(1.0, delta);
    const double w = delta + 7.0;
    const double h = 2.0 * w / points;
    double sum = 0.0;
    for (int k = 0; k <= points; ++k) {
        const double tau = -w + k * h;
        const auto eta = couplings(tau, cfg);
        const auto ev = oracle::dense_eigenvalues(oracle::ladder_hamiltonian(n + 2, eta.eta1, eta.eta2));
        sum += (k == 0 || k == points ? 0.5 : 1.0) * ev[ev.size() - 1];
    }
    return sum * h;
}

}  // namespace

TEST_CASE("unit integral matches an independent quadrature") {
    for (int n : {-1, 0, 1, 4, 10}) {
        for (double delta : {0.0, 0.4, 1.0, 2.5}) {
            CHECK(unit_mixing_integral(n, delta) == doctest::Approx(trapezoid_unit_integral(n, delta)).epsilon(1e-9));
        }
    }
    CHECK(unit_mixing_integral(-1, 1.0) == doctest::Approx(3.319413).epsilon(1e-6));
    CHECK(unit_mixing_integral(0, 1.0) == doctest::Approx(4.811500).epsilon(1e-6));
}

TEST_CASE("mixing angle examples") {
    CHECK(mixing_angle(-1, 1.0, 0.0) == doctest::Approx(2.0 * std::sqrt(2.0) * std::sqrt(kPi)).epsilon(1e-10));
    CHECK(mixing_angle(-1, 1.0, 0.0) == doctest::Approx(5.0133).epsilon(1e-4));
    CHECK(mixing_angle(0, 1.0, 5.0) == doctest::Approx(4.0 * std::sqrt(2.0 * kPi)).epsilon(1e-2));
    CHECK(mixing_angle(0, 1.0, 0.0) == doctest::Approx(2.0 * std::sqrt(6.0 * kPi)).epsilon(1e-10));
    CHECK(mixing_angle(0, 1.0, 0.0) == doctest::Approx(8.683).epsilon(1e-4));
    CHECK_THROWS_AS(mixing_angle(-2, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mixing_angle(0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mixing_angle(0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("mixing angle is linear in g sigma") {
    oracle::Sampler rng(41);
    for (int k = 0; k < 100; ++k) {
        const int n = rng.integer(-1, 12);
        const double delta = rng.uniform(0.0, 4.0);
        const double gs = rng.uniform(0.1, 50.0);
        const double a = rng.uniform(0.1, 10.0);
        CHECK(mixing_angle(n, a * gs, delta) == doctest::Approx(a * mixing_angle(n, gs, delta)).epsilon(1e-12));
    }
}

TEST_CASE("mixing angle grows with delta and saturates") {
    // The integrand envelope argument predicts a decrease; the computed angle rises
    // from the delta = 0 value to the large-delta plateau instead.
    for (int n : {-1, 0, 1, 3, 8}) {
        double previous = 0.0;
        for (int k = 0; k <= 50; ++k) {
            const double phi = mixing_angle(n, 1.0, 0.1 * k);
            CHECK(phi >= previous * (1.0 - 1e-12));
            previous = phi;
        }
        CHECK(std::abs(mixing_angle(n, 1.0, 5.0) / mixing_angle(n, 1.0, 8.0) - 1.0) < 1e-3);
    }
}

TEST_CASE("large photon number limit") {
    CHECK(mixing_angle(100, 1.0, 1.0) / (4.0 * std::sqrt(100.0 * kPi)) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(mixing_angle(10000, 1.0, 1.0) / (4.0 * std::sqrt(10000.0 * kPi)) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("asymptotic forms") {
    const double g = 2.5;
    CHECK(gamma_coefficient(0) == doctest::Approx(20.0 / 9.0).epsilon(1e-15));
    CHECK(angle_asymptotic({0, g, 3.0, AngleMethod::large_delta}) == doctest::Approx(4.0 * g * std::sqrt(2.0 * kPi)));
    CHECK(angle_asymptotic({0, g, 0.0, AngleMethod::small_delta}) == doctest::Approx(2.0 * g * std::sqrt(6.0 * kPi)));
    CHECK(angle_asymptotic({100, 1.0, 1.0, AngleMethod::large_n}) == doctest::Approx(70.898).epsilon(1e-4));
    CHECK(angle_asymptotic({3, g, 1.0, AngleMethod::quadrature}) == doctest::Approx(mixing_angle(3, g, 1.0)));

    for (int n : {0, 1, 2}) {
        const double quad = mixing_angle(n, 1.0, 5.0);
        CHECK(std::abs(angle_asymptotic({n, 1.0, 5.0, AngleMethod::large_delta}) / quad - 1.0) <= 0.01);
        const double small = mixing_angle(n, 1.0, 0.2);
        CHECK(std::abs(angle_asymptotic({n, 1.0, 0.2, AngleMethod::small_delta}) / small - 1.0) <= 0.03);
    }
    const double big = mixing_angle(100, 1.0, 1.0);
    CHECK(std::abs(angle_asymptotic({100, 1.0, 1.0, AngleMethod::large_n}) / big - 1.0) <= 0.01);
}

TEST_CASE("asymptotes refuse to extrapolate") {
    CHECK_THROWS_AS(angle_asymptotic({0, 1.0, 1.0, AngleMethod::large_delta}), OutOfDomainError);
    CHECK_THROWS_AS(angle_asymptotic({0, 1.0, 1.0, AngleMethod::small_delta}), OutOfDomainError);
    CHECK_THROWS_AS(angle_asymptotic({5, 1.0, 1.0, AngleMethod::large_n}), OutOfDomainError);
    for (int n = -1; n < 30; ++n) {
        for (double d = 0.0; d < 0.6; d += 0.05) {
            const bool ok = is_asymptote_valid({n, 1.0, d, AngleMethod::small_delta});
            CHECK(ok == (d <= kSmallDeltaMax && gamma_coefficient(n) * d * d < 1.0));
        }
    }
    const auto row = angle_table_row(0, 1.0, 1.0, AngleMethod::large_delta);
    CHECK(std::isnan(row.phi_asymptotic));
    CHECK(row.phi_quadrature == doctest::Approx(mixing_angle(0, 1.0, 1.0)));
    const auto inside = angle_table_row(1, 2.0, 5.0, AngleMethod::large_delta);
    CHECK(inside.relative_difference == doctest::Approx(inside.phi_asymptotic / inside.phi_quadrature - 1.0));
}

TEST_CASE("method names round-trip") {
    for (auto m : {AngleMethod::quadrature, AngleMethod::large_delta, AngleMethod::small_delta, AngleMethod::large_n}) {
        CHECK(parse_angle_method(method_name(m)) == m);
    }
    CHECK_THROWS_AS(parse_angle_method("laplace"), std::invalid_argument);
}

TEST_CASE("solving g sigma for a target angle") {
    const double i1 = trapezoid_unit_integral(-1, 1.0);
    const auto two_pi = solve_gsigma_for_angle(2.0 * kPi, -1, 1.0, 0.0);
    CHECK(two_pi.multiplicity == 0);
    CHECK(two_pi.g_sigma == doctest::Approx(kPi / i1).epsilon(1e-9));

    const auto half = solve_gsigma_for_angle(kPi, -1, 1.0, 0.0);
    CHECK(two_pi.g_sigma == doctest::Approx(2.0 * half.g_sigma).epsilon(1e-14));

    const auto floor = solve_gsigma_for_angle(kPi, -1, 1.0, 10.0);
    CHECK(floor.g_sigma >= 10.0);
    CHECK(floor.angle == doctest::Approx((2.0 * floor.multiplicity + 1.0) * kPi));
    const double previous = (2.0 * floor.multiplicity - 1.0) * kPi / (2.0 * i1);
    CHECK(previous < 10.0);
    CHECK(mixing_angle(-1, floor.g_sigma, 1.0) == doctest::Approx(floor.angle).epsilon(1e-12));

    oracle::Sampler rng(43);
    for (int k = 0; k < 50; ++k) {
        const double target = rng.uniform(0.1, 7.0);
        const int n = rng.integer(-1, 5);
        const double delta = rng.uniform(0.5, 2.0);
        const double min_gs = rng.uniform(0.0, 40.0);
        const auto s = solve_gsigma_for_angle(target, n, delta, min_gs);
        CHECK(s.g_sigma >= min_gs);
        CHECK(std::remainder(s.angle - target, 2.0 * kPi) == doctest::Approx(0.0).epsilon(1e-9));
        if (s.multiplicity > 0) {
            CHECK((s.angle - 2.0 * kPi) / (2.0 * unit_mixing_integral(n, delta)) < min_gs);
        }
    }
    CHECK_THROWS_AS(solve_gsigma_for_angle(0.0, -1, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("integral cache is safe under concurrent use") {
    std::vector<double> got(64);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < got.size(); ++t) {
            pool.emplace_back([&got, t] { got[t] = unit_mixing_integral(static_cast<int>(t % 8) + 20, 0.75); });
        }
    }
    for (std::size_t t = 0; t < got.size(); ++t) {
        CHECK(got[t] == unit_mixing_integral(static_cast<int>(t % 8) + 20, 0.75));
    }
}
