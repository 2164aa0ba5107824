#include "tavis/spectrum.hpp"

#include "tavis/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace tavis {

namespace {

// Below this both couplings are numerically zero and only the tau -> +/-inf
// limits of the eigenvectors make sense.
constexpr double kVanishingCoupling = 1e-290;

// eta1^2 - eta2^2 = -2 exp(-2(tau^2 + delta^2)) sinh(4 tau delta), exact sign and
// no cancellation near tau = 0.
double difference_of_squares(double tau, double delta, double eta1, double eta2) {
    const double x = 4.0 * tau * delta;
    if (std::abs(x) < 20.0) {
        return -2.0 * std::exp(-2.0 * (tau * tau + delta * delta)) * std::sinh(x);
    }
    return eta1 * eta1 - eta2 * eta2;
}

// Sign of eta1^2 - eta2^2 on the requested side of the crossing: +1 before the
// crossing (atom 1 dominates), -1 after.
double crossing_side_sign(double tau, Side side) {
    if (tau < 0.0) return 1.0;
    if (tau > 0.0) return -1.0;
    return side == Side::left ? 1.0 : -1.0;
}

void require_manifold(int n) {
    if (n < 0) throw std::invalid_argument("adiabatic states need n >= 0 (got " + std::to_string(n) + ")");
}

}  // namespace

SpectralTerms spectral_terms(int n, double tau, const PulseConfig& cfg) {
    if (n < -1) throw std::invalid_argument("spectral_terms: n must be >= -1");
    SpectralTerms t;
    t.n = n;
    const auto eta = couplings(tau, cfg);
    t.eta1 = eta.eta1;
    t.eta2 = eta.eta2;
    t.sum_sq = eta.eta1 * eta.eta1 + eta.eta2 * eta.eta2;
    t.diff_sq = difference_of_squares(tau, cfg.delta, eta.eta1, eta.eta2);
    const double pair = static_cast<double>((n + 1) * (n + 2));
    t.f = std::hypot(t.sum_sq, 4.0 * std::sqrt(pair) * eta.eta1 * eta.eta2);
    const double outer = (3.0 + 2.0 * n) * t.sum_sq + t.f;
    t.e_plus = std::sqrt(0.5 * outer);
    // E_-^2 = ((3+2n)s - F)/2 = 2(n+1)(n+2) diff^2 / ((3+2n)s + F)
    t.e_minus = outer > 0.0 ? std::sqrt(2.0 * pair) * std::abs(t.diff_sq) / std::sqrt(outer) : 0.0;
    return t;
}

double characteristic_poly(double energy, int n, double tau, const PulseConfig& cfg) {
    const auto t = spectral_terms(n, tau, cfg);
    const double e2 = energy * energy;
    return e2 * e2 - e2 * (3.0 + 2.0 * n) * t.sum_sq + (n + 1.0) * (n + 2.0) * t.diff_sq * t.diff_sq;
}

std::array<double, 4> adiabatic_energies(int n, double tau, const PulseConfig& cfg) {
    const auto t = spectral_terms(n, tau, cfg);
    if (n == -1) {
        const double outer = std::sqrt(t.sum_sq);
        return {0.0, 0.0, -outer, outer};
    }
    return {-t.e_minus, t.e_minus, -t.e_plus, t.e_plus};
}

StateCoefficients state_coefficients(int n, double tau, const PulseConfig& cfg, Side side) {
    require_manifold(n);
    const auto t = spectral_terms(n, tau, cfg);
    const double side_sign = crossing_side_sign(tau, side);
    const double r1 = std::sqrt(n + 1.0);
    const double r2 = std::sqrt(n + 2.0);
    StateCoefficients c;

    if (t.sum_sq < kVanishingCoupling) {
        // Only one atom couples: Psi_3,4 live on {|n+1,e1g2>, |n+2,g1g2>} before the
        // pulses and on {|n+1,g1e2>, |n+2,g1g2>} after them.
        const double h = std::sqrt(0.5);
        c.a_plus = 0.0;
        c.d_plus = h;
        c.b_plus = tau < 0.0 ? 0.0 : -h;
        c.c_plus = tau < 0.0 ? h : 0.0;
    } else {
        const double pair = (n + 1.0) * (n + 2.0);
        const double ratio = t.sum_sq / t.f;
        // A+^2 = (1 - s/F)/4 written as 4(n+1)(n+2) eta1^2 eta2^2 / (F (F + s))
        c.a_plus = 2.0 * std::sqrt(pair) * t.eta1 * t.eta2 / std::sqrt(t.f * (t.f + t.sum_sq));
        c.d_plus = 0.5 * std::sqrt(1.0 + ratio);
        c.b_plus = -(t.eta1 * r1 * c.a_plus + t.eta2 * r2 * c.d_plus) / t.e_plus;
        c.c_plus = (t.eta2 * r1 * c.a_plus + t.eta1 * r2 * c.d_plus) / t.e_plus;
    }
    c.a_minus = -c.d_plus;
    c.d_minus = c.a_plus;
    // Orthogonality to Psi_3,4 fixes (B-, C-) up to the sign that flips at the crossing.
    c.b_minus = side_sign * c.c_plus;
    c.c_minus = -side_sign * c.b_plus;
    return c;
}

namespace {

AdiabaticFrame raw_frame(int n, double tau, const PulseConfig& cfg, Side side) {
    const auto c = state_coefficients(n, tau, cfg, side);
    const auto e = adiabatic_energies(n, tau, cfg);
    AdiabaticFrame frame;
    frame.tau = tau;
    frame.n = n;
    frame.ordering = FrameOrdering::raw;
    frame.energies = e;
    frame.states[0] = {c.a_minus, c.b_minus, -c.c_minus, c.d_minus};
    frame.states[1] = {c.a_minus, -c.b_minus, c.c_minus, c.d_minus};
    frame.states[2] = {c.a_plus, c.b_plus, -c.c_plus, c.d_plus};
    frame.states[3] = {c.a_plus, -c.b_plus, c.c_plus, c.d_plus};
    return frame;
}

}  // namespace

AdiabaticFrame adiabatic_states(int n, double tau, const PulseConfig& cfg) {
    if (tau == 0.0) {
        throw DegeneratePointError(
            "adiabatic_states: tau = 0 is the degeneracy point; use degeneracy_states or crossing_frame");
    }
    return raw_frame(n, tau, cfg, Side::left);
}

AdiabaticFrame adiabatic_states(int n, double tau, const PulseConfig& cfg, Side side) {
    return raw_frame(n, tau, cfg, side);
}

AdiabaticFrame crossing_frame(int n, double tau, const PulseConfig& cfg) {
    // Psi'_1 keeps the eigenvector family of Psi_1(0-), i.e. the left-side raw
    // coefficients continued through the crossing.
    const auto c = state_coefficients(n, tau, cfg, Side::left);
    const auto t = spectral_terms(n, tau, cfg);
    const double sign = tau < 0.0 ? -1.0 : (tau > 0.0 ? 1.0 : 0.0);
    AdiabaticFrame frame;
    frame.tau = tau;
    frame.n = n;
    frame.ordering = FrameOrdering::crossing_aware;
    frame.energies = {sign * t.e_minus, -sign * t.e_minus, -t.e_plus, t.e_plus};
    frame.states[0] = {c.a_minus, c.c_plus, c.b_plus, c.d_minus};
    frame.states[1] = {c.a_minus, -c.c_plus, -c.b_plus, c.d_minus};
    frame.states[2] = {c.a_plus, c.b_plus, -c.c_plus, c.d_plus};
    frame.states[3] = {c.a_plus, -c.b_plus, c.c_plus, c.d_plus};
    return frame;
}

AdiabaticFrame adiabatic_frame(int n, double tau, const PulseConfig& cfg, FrameOrdering ordering,
                               Side tie_break) {
    return ordering == FrameOrdering::raw ? raw_frame(n, tau, cfg, tie_break) : crossing_frame(n, tau, cfg);
}

double branch_energy(int branch, int n, double tau, const PulseConfig& cfg, FrameOrdering ordering) {
    if (branch < 1 || branch > 4) throw std::invalid_argument("branch must be in 1..4");
    if (n == -1) return adiabatic_energies(n, tau, cfg)[branch - 1];
    const auto t = spectral_terms(n, tau, cfg);
    switch (branch) {
        case 1:
        case 2: {
            const double raw = branch == 1 ? -t.e_minus : t.e_minus;
            if (ordering == FrameOrdering::raw || tau < 0.0) return raw;
            return tau > 0.0 ? -raw : 0.0;
        }
        case 3:
            return -t.e_plus;
        default:
            return t.e_plus;
    }
}

DegeneracyData degeneracy_states(int n, Side side) {
    require_manifold(n);
    DegeneracyData d;
    d.n = n;
    d.alpha = std::sqrt((1.0 + n) / (6.0 + 4.0 * n));
    d.beta = std::sqrt((n + 2.0) / (6.0 + 4.0 * n));
    const double h = std::sqrt(0.5);
    d.plus_state = {0.0, h, h, 0.0};
    d.minus_state = {0.0, h, -h, 0.0};
    const Eigen::Vector4d inner{-d.beta, 0.0, 0.0, d.alpha};
    const Eigen::Vector4d outer{d.alpha, 0.0, 0.0, d.beta};
    // Psi_1 carries +|-> just before the crossing and -|-> just after it.
    const double s = side == Side::left ? 1.0 : -1.0;
    d.states[0] = inner + s * h * d.minus_state;
    d.states[1] = inner - s * h * d.minus_state;
    d.states[2] = outer - h * d.plus_state;
    d.states[3] = outer + h * d.plus_state;
    return d;
}

}  // namespace tavis
