#include "tavis/angle.hpp"

#include "tavis/errors.hpp"
#include "tavis/spectrum.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tavis {

namespace {

class UnitIntegralCache {
public:
    double get(int n, double delta) {
        const Key key{n, delta};
        {
            std::shared_lock lock(mutex_);
            if (auto it = values_.find(key); it != values_.end()) return it->second;
        }
        const double value = compute(n, delta);
        std::unique_lock lock(mutex_);
        return values_.emplace(key, value).first->second;
    }

private:
    using Key = std::pair<int, double>;

    static double compute(int n, double delta) {
        using boost::math::quadrature::gauss_kronrod;
        const PulseConfig cfg(1.0, delta);
        auto outer = [&](double tau) { return adiabatic_energies(n, tau, cfg)[3]; };
        const double edge = delta + 7.0;
        double error = 0.0;
        // Even integrand: integrate one half. The split at 0 also keeps both peaks
        // away from the interval ends.
        return 2.0 * gauss_kronrod<double, 61>::integrate(outer, 0.0, edge, 25, 1e-13, &error);
    }

    std::shared_mutex mutex_;
    std::map<Key, double> values_;
};

UnitIntegralCache& cache() {
    static UnitIntegralCache instance;
    return instance;
}

}  // namespace

double unit_mixing_integral(int n, double delta) {
    if (n < -1) throw std::invalid_argument("mixing angle: n must be >= -1");
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("mixing angle: delta must be >= 0");
    return cache().get(n, delta);
}

double mixing_angle(int n, double g_sigma, double delta) {
    if (!(g_sigma > 0.0)) throw std::invalid_argument("mixing angle: g_sigma must be > 0");
    return 2.0 * g_sigma * unit_mixing_integral(n, delta);
}

double gamma_coefficient(int n) {
    const double k = 3.0 + 2.0 * n;
    return 2.0 * (k * k + 1.0) / (k * k);
}

bool is_asymptote_valid(const MixingAngleQuery& q) {
    switch (q.method) {
        case AngleMethod::quadrature:
            return true;
        case AngleMethod::large_delta:
            return q.delta >= kLargeDeltaMin;
        case AngleMethod::small_delta:
            return q.delta <= kSmallDeltaMax && gamma_coefficient(q.n) * q.delta * q.delta < 1.0;
        case AngleMethod::large_n:
            return q.n >= kLargeNMin;
    }
    return false;
}

double angle_asymptotic(const MixingAngleQuery& q) {
    if (q.n < -1) throw std::invalid_argument("angle_asymptotic: n must be >= -1");
    if (!(q.g_sigma > 0.0) || !(q.delta >= 0.0)) {
        throw std::invalid_argument("angle_asymptotic: need g_sigma > 0 and delta >= 0");
    }
    if (!is_asymptote_valid(q)) {
        std::ostringstream msg;
        msg << "angle_asymptotic: " << method_name(q.method) << " is not valid for n=" << q.n
            << ", delta=" << q.delta;
        throw OutOfDomainError(msg.str());
    }
    constexpr double pi = std::numbers::pi;
    switch (q.method) {
        case AngleMethod::quadrature:
            return mixing_angle(q.n, q.g_sigma, q.delta);
        case AngleMethod::large_delta:
            return 4.0 * q.g_sigma * std::sqrt((q.n + 2.0) * pi);
        case AngleMethod::small_delta: {
            const double d2 = q.delta * q.delta;
            return 2.0 * q.g_sigma * std::exp(-d2) *
                   std::sqrt((6.0 + 4.0 * q.n) * pi / (1.0 - gamma_coefficient(q.n) * d2));
        }
        case AngleMethod::large_n:
            return 4.0 * q.g_sigma * std::sqrt(q.n * pi);
    }
    throw std::logic_error("angle_asymptotic: unknown method");
}

GSigmaSolution solve_gsigma_for_angle(double target, int n, double delta, double min_g_sigma) {
    if (!(target > 0.0)) throw std::invalid_argument("solve_gsigma_for_angle: target must be > 0");
    const double per_unit = 2.0 * unit_mixing_integral(n, delta);
    GSigmaSolution sol;
    sol.multiplicity = 0;
    sol.angle = target;
    sol.g_sigma = target / per_unit;
    if (sol.g_sigma < min_g_sigma) {
        const double two_pi = 2.0 * std::numbers::pi;
        sol.multiplicity = static_cast<int>(std::ceil((min_g_sigma * per_unit - target) / two_pi));
        sol.angle = target + two_pi * sol.multiplicity;
        sol.g_sigma = sol.angle / per_unit;
        // ceil can land one short through rounding
        if (sol.g_sigma < min_g_sigma) {
            ++sol.multiplicity;
            sol.angle += two_pi;
            sol.g_sigma = sol.angle / per_unit;
        }
    }
    return sol;
}

std::string method_name(AngleMethod method) {
    switch (method) {
        case AngleMethod::quadrature:
            return "quadrature";
        case AngleMethod::large_delta:
            return "large_delta";
        case AngleMethod::small_delta:
            return "small_delta";
        case AngleMethod::large_n:
            return "large_n";
    }
    return "unknown";
}

AngleMethod parse_angle_method(const std::string& name) {
    for (auto m : {AngleMethod::quadrature, AngleMethod::large_delta, AngleMethod::small_delta, AngleMethod::large_n}) {
        if (method_name(m) == name) return m;
    }
    throw std::invalid_argument("unknown angle method: " + name);
}

AngleTableRow angle_table_row(int n, double g_sigma, double delta, AngleMethod method) {
    AngleTableRow row;
    row.n = n;
    row.delta = delta;
    row.g_sigma = g_sigma;
    row.method = method;
    row.phi_quadrature = mixing_angle(n, g_sigma, delta);
    const MixingAngleQuery q{n, g_sigma, delta, method};
    if (is_asymptote_valid(q)) {
        row.phi_asymptotic = angle_asymptotic(q);
        row.relative_difference = (row.phi_asymptotic - row.phi_quadrature) / row.phi_quadrature;
    } else {
        row.phi_asymptotic = std::numeric_limits<double>::quiet_NaN();
        row.relative_difference = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

}  // namespace tavis
