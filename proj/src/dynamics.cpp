#include "tavis/dynamics.hpp"

#include "tavis/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tavis {

namespace odeint = boost::numeric::odeint;

namespace {

using BlockState = std::vector<complex>;

std::vector<double> uniform_grid(TauSpan span, std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("tau grid needs at least two samples");
    std::vector<double> taus(samples);
    const double step = (span.end - span.begin) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) taus[i] = span.begin + step * static_cast<double>(i);
    taus.back() = span.end;
    return taus;
}

struct BlockPropagator {
    int excitations;
    const PulseConfig& cfg;

    void operator()(const BlockState& x, BlockState& dxdt, double tau) const {
        const auto eta = couplings(tau, cfg);
        apply_hamiltonian(excitations, eta, x, dxdt);
        const complex factor{0.0, -cfg.time_scale()};
        for (auto& v : dxdt) v *= factor;
    }
};

// Writes the amplitudes of one block at every grid point into `samples[k]`.
void integrate_block(int excitations, const Eigen::VectorXcd& initial, const PulseConfig& cfg,
                     const std::vector<double>& taus, const EvolveOptions& options,
                     std::vector<Eigen::VectorXcd>& samples) {
    const auto dim = static_cast<std::size_t>(initial.size());
    samples.assign(taus.size(), initial);
    if (excitations == 0) return;  // H vanishes identically

    BlockState x(initial.data(), initial.data() + dim);
    auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol,
                                             odeint::runge_kutta_dopri5<BlockState>());
    std::size_t index = 0;
    auto observer = [&](const BlockState& state, double) {
        samples[index++] = Eigen::Map<const Eigen::VectorXcd>(state.data(), static_cast<Eigen::Index>(dim));
    };
    const double span = std::abs(taus.back() - taus.front());
    const double dt0 = std::copysign(std::min(1e-3, span / 10.0), taus.back() - taus.front());
    try {
        odeint::integrate_times(stepper, BlockPropagator{excitations, cfg}, x, taus.begin(), taus.end(), dt0,
                                observer, odeint::max_step_checker(options.max_steps));
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "evolve: integration of manifold N=" << excitations << " failed near tau="
            << stepper.current_time() << " (last step " << stepper.current_time_step()
            << ", tolerance abs=" << options.abs_tol << " rel=" << options.rel_tol << "): " << e.what();
        throw IntegrationError(msg.str(), stepper.current_time(), stepper.current_time_step());
    }
    if (index != taus.size()) {
        throw IntegrationError("evolve: integrator stopped before the end of the span", stepper.current_time(),
                               stepper.current_time_step());
    }
}

// Gauss-Kronrod on [a, b], split at tau = 0 where E_- has a kink.
template <class F>
double integrate_split(F&& f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    auto piece = [&](double lo, double hi) {
        if (lo == hi) return 0.0;
        double error = 0.0;
        return gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, 1e-12, &error);
    };
    if (a < 0.0 && b > 0.0) return piece(a, 0.0) + piece(0.0, b);
    if (b < 0.0 && a > 0.0) return piece(a, 0.0) + piece(0.0, b);
    return piece(a, b);
}

}  // namespace

TauSpan default_span(const PulseConfig& cfg) noexcept {
    const double w = default_window(cfg);
    return {-w, w};
}

EvolutionResult evolve(const SystemState& initial, const PulseConfig& cfg, TauSpan span,
                       const EvolveOptions& options) {
    cfg.validate();
    if (!(options.abs_tol > 0.0) || !(options.rel_tol > 0.0)) {
        throw std::invalid_argument("evolve: tolerances must be positive");
    }
    const double norm0 = initial.norm_squared();
    if (std::abs(norm0 - 1.0) > 1e-8) {
        throw std::invalid_argument("evolve: initial state is not normalised");
    }

    EvolutionResult result;
    result.pulse = cfg;
    result.taus = uniform_grid(span, options.samples);
    result.trajectory.assign(result.taus.size(), SystemState{});

    std::vector<Eigen::VectorXcd> samples;
    for (const auto& [excitations, blk] : initial.blocks()) {
        integrate_block(excitations, blk.amplitudes, cfg, result.taus, options, samples);
        for (std::size_t k = 0; k < samples.size(); ++k) {
            auto& target = result.trajectory[k].ensure_block(excitations);
            target.amplitudes = samples[k];
        }
    }
    for (const auto& state : result.trajectory) {
        result.norm_drift = std::max(result.norm_drift, std::abs(1.0 - state.norm_squared()));
    }
    result.final_state = result.trajectory.back();
    return result;
}

SystemState frame_state(int n, int branch, double tau, const PulseConfig& cfg, FrameOrdering ordering) {
    if (branch < 1 || branch > 4) throw std::invalid_argument("frame_state: branch must be in 1..4");
    const auto frame = adiabatic_frame(n, tau, cfg, ordering);
    SystemState state;
    auto& blk = state.ensure_block(n + 2);
    blk.amplitudes = frame.states[static_cast<std::size_t>(branch - 1)].cast<complex>();
    return state;
}

double dynamical_phase(int branch, int n, const PulseConfig& cfg, TauSpan span) {
    cfg.validate();
    auto energy = [&](double tau) { return branch_energy(branch, n, tau, cfg, FrameOrdering::crossing_aware); };
    return cfg.time_scale() * integrate_split(energy, span.begin, span.end);
}

double adiabaticity_q(int i, int j, int n, double tau, double delta, DerivativeMethod method, double step) {
    if (i == j || i < 1 || j < 1 || i > 4 || j > 4) {
        throw std::invalid_argument("adiabaticity_q: need distinct branches in 1..4");
    }
    // Q does not depend on g; any g_sigma will do.
    const PulseConfig cfg(1.0, delta);
    const auto frame = adiabatic_states(n, tau, cfg, Side::left);
    const double gap = frame.energies[static_cast<std::size_t>(i - 1)] - frame.energies[static_cast<std::size_t>(j - 1)];
    // (1,2) and (3,4) are +/-E partners, exchanged by diag(1,-1,-1,1), which
    // anticommutes with dH: the element is zero, only the 0/0 at E = 0 is undefined.
    const bool partners = std::abs(i - j) == 1 && std::min(i, j) % 2 == 1;
    if (partners && gap != 0.0) return 0.0;
    if (std::abs(gap) <= 1e-12) {
        std::ostringstream msg;
        msg << "adiabaticity_q: branches " << i << " and " << j << " are degenerate at tau=" << tau;
        throw DegeneratePointError(msg.str());
    }
    Eigen::MatrixXd dh;
    if (method == DerivativeMethod::analytic) {
        dh = hamiltonian_derivative(n + 2, tau, cfg);
    } else {
        dh = (build_hamiltonian(n + 2, tau + step, cfg) - build_hamiltonian(n + 2, tau - step, cfg)) / (2.0 * step);
    }
    const auto& vi = frame.states[static_cast<std::size_t>(i - 1)];
    const auto& vj = frame.states[static_cast<std::size_t>(j - 1)];
    const double element = vi.dot(dh * vj);
    return std::abs(element) / (2.0 * gap * gap);
}

double max_adiabaticity_q(int i, int j, int n, double delta, TauSpan span, std::size_t samples) {
    double best = 0.0;
    for (double tau : uniform_grid(span, samples)) {
        try {
            best = std::max(best, adiabaticity_q(i, j, n, tau, delta));
        } catch (const DegeneratePointError&) {
            // pair (1,2) at the crossing
        }
    }
    return best;
}

std::vector<double> nonadiabaticity_eps(int branch, const EvolutionResult& result, int n, FrameOrdering ordering) {
    if (branch < 1 || branch > 4) throw std::invalid_argument("nonadiabaticity_eps: branch must be in 1..4");
    std::vector<double> out;
    out.reserve(result.taus.size());
    for (std::size_t k = 0; k < result.taus.size(); ++k) {
        const auto frame = adiabatic_frame(n, result.taus[k], result.pulse, ordering);
        const auto* blk = result.trajectory[k].block(n + 2);
        complex overlap = 0.0;
        if (blk) overlap = frame.states[static_cast<std::size_t>(branch - 1)].cast<complex>().dot(blk->amplitudes);
        out.push_back(std::abs(1.0 - std::norm(overlap)));
    }
    return out;
}

double omega_minus(double tau, const PulseConfig& cfg) noexcept {
    return coupling_envelope(Atom::first, tau, cfg) - coupling_envelope(Atom::second, tau, cfg);
}

double omega_plus(double tau, const PulseConfig& cfg) noexcept {
    return coupling_envelope(Atom::first, tau, cfg) + coupling_envelope(Atom::second, tau, cfg);
}

EffectiveCrossingModel effective_crossing_model(int n) {
    if (n < 0) throw std::invalid_argument("effective_crossing_model: n must be >= 0");
    EffectiveCrossingModel m;
    m.n = n;
    m.omega1 = 0.5 * std::sqrt((n + 1.0) * (n + 2.0) / (6.0 + 4.0 * n));
    m.omega2 = 0.5 * std::sqrt(6.0 + 4.0 * n);
    return m;
}

Eigen::Matrix4d EffectiveCrossingModel::hamiltonian(double tau, const PulseConfig& cfg) const {
    const double wm = omega_minus(tau, cfg);
    const double wp = omega_plus(tau, cfg);
    const double coupling = wm / (4.0 * omega2);
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    h(0, 0) = -4.0 * omega1 * wm;
    h(1, 1) = 4.0 * omega1 * wm;
    h(2, 2) = -omega2 * wp;
    h(3, 3) = omega2 * wp;
    for (int k = 2; k < 4; ++k) {
        h(0, k) = h(k, 0) = -coupling;
        h(1, k) = h(k, 1) = coupling;
    }
    return h;
}

Eigen::Matrix4d EffectiveCrossingModel::basis() const {
    const auto d = degeneracy_states(n, Side::left);
    Eigen::Matrix4d b;
    for (int k = 0; k < 4; ++k) b.col(k) = d.states[static_cast<std::size_t>(k)];
    return b;
}

EffectiveEvolution effective_two_level_evolve(int n, const PulseConfig& cfg, TauSpan window, complex c1_start,
                                              complex c2_start, std::size_t samples) {
    cfg.validate();
    EffectiveEvolution out;
    out.model = effective_crossing_model(n);
    const double limit = 0.25 * cfg.delta;
    out.outside_validity = std::max(std::abs(window.begin), std::abs(window.end)) > limit;
    out.taus = uniform_grid(window, samples);

    // int_{begin}^{tau} W- via the error function.
    const double half_sqrt_pi = 0.5 * std::sqrt(std::numbers::pi);
    auto primitive = [&](double tau) {
        return half_sqrt_pi * (std::erf(tau + cfg.delta) - std::erf(tau - cfg.delta));
    };
    const double base = primitive(window.begin);
    const double rate = cfg.time_scale() * 4.0 * out.model.omega1;
    for (double tau : out.taus) {
        const double phase = rate * (primitive(tau) - base);
        out.c1.push_back(c1_start * std::polar(1.0, phase));
        out.c2.push_back(c2_start * std::polar(1.0, -phase));
    }
    return out;
}

}  // namespace tavis
