#include "tavis/model.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace tavis {

namespace {

constexpr double kNormTolerance = 1e-12;

bool relative_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

PulseConfig PulseConfig::from_physical(double g, double v, double x0, double delta_t) {
    if (!(g > 0.0) || !(v > 0.0) || !(x0 > 0.0) || !(delta_t >= 0.0)) {
        throw std::invalid_argument("PulseConfig: g, v, x0 must be positive and delta_t non-negative");
    }
    PhysicalPulse phys{g, x0 / v, v, x0, delta_t};
    PulseConfig cfg(g * phys.sigma, delta_t / (2.0 * phys.sigma));
    cfg.physical = phys;
    return cfg;
}

void PulseConfig::validate() const {
    if (!(g_sigma > 0.0) || !std::isfinite(g_sigma)) {
        throw std::invalid_argument("PulseConfig: g_sigma must be positive and finite");
    }
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("PulseConfig: delta must be non-negative and finite");
    }
    if (physical) {
        const auto& p = *physical;
        if (!(p.v > 0.0) || !(p.x0 > 0.0) || !(p.sigma > 0.0)) {
            throw std::invalid_argument("PulseConfig: physical block needs positive v, x0, sigma");
        }
        if (!relative_close(p.sigma, p.x0 / p.v, 1e-12)) {
            throw std::invalid_argument("PulseConfig: sigma != x0 / v");
        }
        const double expected_delta = p.delta_t / (2.0 * p.sigma);
        if (!relative_close(delta, expected_delta, 1e-12) && !(delta == 0.0 && p.delta_t == 0.0)) {
            throw std::invalid_argument("PulseConfig: delta != delta_t / (2 sigma)");
        }
        if (!relative_close(g_sigma, p.g * p.sigma, 1e-12)) {
            throw std::invalid_argument("PulseConfig: g_sigma != g * sigma");
        }
    }
}

double coupling_envelope(Atom atom, double tau, const PulseConfig& cfg) noexcept {
    const double shift = atom == Atom::first ? tau + cfg.delta : tau - cfg.delta;
    return std::exp(-shift * shift);
}

double coupling_envelope_derivative(Atom atom, double tau, const PulseConfig& cfg) noexcept {
    const double shift = atom == Atom::first ? tau + cfg.delta : tau - cfg.delta;
    return -2.0 * shift * std::exp(-shift * shift);
}

Couplings couplings(double tau, const PulseConfig& cfg) noexcept {
    return {coupling_envelope(Atom::first, tau, cfg), coupling_envelope(Atom::second, tau, cfg)};
}

Couplings coupling_derivatives(double tau, const PulseConfig& cfg) noexcept {
    return {coupling_envelope_derivative(Atom::first, tau, cfg),
            coupling_envelope_derivative(Atom::second, tau, cfg)};
}

std::string BareState::label() const {
    std::string out = "|" + std::to_string(photons) + ",";
    out += atom1 == Level::ground ? "g1" : "e1";
    out += atom2 == Level::ground ? "g2" : "e2";
    out += ">";
    return out;
}

int ManifoldBasis::index_of(const BareState& state) const noexcept {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i] == state) return static_cast<int>(i);
    }
    return -1;
}

ManifoldBasis manifold_basis(int excitations) {
    if (excitations < 0) throw std::invalid_argument("manifold_basis: N must be >= 0");
    ManifoldBasis basis;
    basis.excitations = excitations;
    const int n = excitations - 2;
    if (excitations == 0) {
        basis.states = {{0, Level::ground, Level::ground}};
    } else if (excitations == 1) {
        basis.states = {{0, Level::ground, Level::excited},
                        {0, Level::excited, Level::ground},
                        {1, Level::ground, Level::ground}};
    } else {
        basis.states = {{n, Level::excited, Level::excited},
                        {n + 1, Level::ground, Level::excited},
                        {n + 1, Level::excited, Level::ground},
                        {n + 2, Level::ground, Level::ground}};
    }
    return basis;
}

namespace {

// Fills the lower triangle pattern shared by H and dH/dtau.
Eigen::MatrixXd assemble(int excitations, const Couplings& c) {
    if (excitations < 0) throw std::invalid_argument("build_hamiltonian: N must be >= 0");
    if (excitations == 0) return Eigen::MatrixXd::Zero(1, 1);
    if (excitations == 1) {
        // |0,g1e2>, |0,e1g2>, |1,g1g2>
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(3, 3);
        h(2, 0) = h(0, 2) = c.eta2;
        h(2, 1) = h(1, 2) = c.eta1;
        return h;
    }
    const int n = excitations - 2;
    const double r1 = std::sqrt(static_cast<double>(n + 1));
    const double r2 = std::sqrt(static_cast<double>(n + 2));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
    h(1, 0) = h(0, 1) = c.eta1 * r1;
    h(2, 0) = h(0, 2) = c.eta2 * r1;
    h(3, 2) = h(2, 3) = c.eta1 * r2;
    h(3, 1) = h(1, 3) = c.eta2 * r2;
    return h;
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(int excitations, double tau, const PulseConfig& cfg) {
    return assemble(excitations, couplings(tau, cfg));
}

Eigen::MatrixXd hamiltonian_derivative(int excitations, double tau, const PulseConfig& cfg) {
    return assemble(excitations, coupling_derivatives(tau, cfg));
}

void apply_hamiltonian(int excitations, const Couplings& c, std::span<const complex> in,
                       std::span<complex> out) noexcept {
    if (excitations == 0) {
        out[0] = 0.0;
        return;
    }
    if (excitations == 1) {
        out[0] = c.eta2 * in[2];
        out[1] = c.eta1 * in[2];
        out[2] = c.eta2 * in[0] + c.eta1 * in[1];
        return;
    }
    const int n = excitations - 2;
    const double r1 = std::sqrt(static_cast<double>(n + 1));
    const double r2 = std::sqrt(static_cast<double>(n + 2));
    const double a = c.eta1 * r1, b = c.eta2 * r1, d = c.eta1 * r2, e = c.eta2 * r2;
    out[0] = a * in[1] + b * in[2];
    out[1] = a * in[0] + e * in[3];
    out[2] = b * in[0] + d * in[3];
    out[3] = d * in[2] + e * in[1];
}

complex SystemState::amplitude(const BareState& state) const {
    const auto* blk = block(state.excitations());
    if (!blk) return 0.0;
    const int idx = blk->basis.index_of(state);
    return idx < 0 ? complex{0.0} : blk->amplitudes[idx];
}

void SystemState::set_amplitude(const BareState& state, complex value) {
    auto& blk = ensure_block(state.excitations());
    const int idx = blk.basis.index_of(state);
    if (idx < 0) throw std::invalid_argument("SystemState: state " + state.label() + " is not in any manifold");
    blk.amplitudes[idx] = value;
}

void SystemState::add_amplitude(const BareState& state, complex value) {
    auto& blk = ensure_block(state.excitations());
    const int idx = blk.basis.index_of(state);
    if (idx < 0) throw std::invalid_argument("SystemState: state " + state.label() + " is not in any manifold");
    blk.amplitudes[idx] += value;
}

double SystemState::norm_squared() const {
    double total = 0.0;
    for (const auto& [n, blk] : blocks_) total += blk.norm_squared();
    return total;
}

void SystemState::normalize() {
    const double norm = std::sqrt(norm_squared());
    if (norm == 0.0) throw std::invalid_argument("SystemState: cannot normalise the zero vector");
    for (auto& [n, blk] : blocks_) blk.amplitudes /= norm;
}

void SystemState::prune(double threshold) {
    for (auto it = blocks_.begin(); it != blocks_.end();) {
        if (it->second.norm_squared() <= threshold) {
            it = blocks_.erase(it);
        } else {
            ++it;
        }
    }
}

const ManifoldBlock* SystemState::block(int excitations) const {
    auto it = blocks_.find(excitations);
    return it == blocks_.end() ? nullptr : &it->second;
}

ManifoldBlock& SystemState::ensure_block(int excitations) {
    auto it = blocks_.find(excitations);
    if (it == blocks_.end()) {
        ManifoldBlock blk;
        blk.basis = manifold_basis(excitations);
        blk.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(blk.basis.dimension()));
        it = blocks_.emplace(excitations, std::move(blk)).first;
    }
    return it->second;
}

std::vector<std::pair<BareState, complex>> SystemState::entries() const {
    std::vector<std::pair<BareState, complex>> out;
    for (const auto& [n, blk] : blocks_) {
        for (std::size_t i = 0; i < blk.basis.dimension(); ++i) {
            const complex a = blk.amplitudes[static_cast<Eigen::Index>(i)];
            if (a != complex{0.0}) out.emplace_back(blk.basis.states[i], a);
        }
    }
    return out;
}

complex SystemState::inner(const SystemState& other) const {
    complex total = 0.0;
    for (const auto& [n, blk] : blocks_) {
        const auto* rhs = other.block(n);
        if (rhs) total += blk.amplitudes.dot(rhs->amplitudes);  // dot conjugates the left operand
    }
    return total;
}

SystemState decompose_product_state(const QubitAmplitudes& atom1, const QubitAmplitudes& atom2,
                                    std::span<const complex> cavity) {
    for (const auto* q : {&atom1, &atom2}) {
        if (std::abs(q->alpha * q->alpha + q->beta * q->beta - 1.0) > kNormTolerance) {
            throw std::invalid_argument("decompose_product_state: atomic amplitudes not normalised");
        }
    }
    if (cavity.empty()) throw std::invalid_argument("decompose_product_state: empty cavity state");
    double cavity_norm = 0.0;
    for (const auto& c : cavity) cavity_norm += std::norm(c);
    if (std::abs(cavity_norm - 1.0) > kNormTolerance) {
        throw std::invalid_argument("decompose_product_state: cavity amplitudes not normalised");
    }

    const std::array<complex, 2> a1{atom1.alpha, atom1.beta * std::polar(1.0, atom1.theta)};
    const std::array<complex, 2> a2{atom2.alpha, atom2.beta * std::polar(1.0, atom2.theta)};
    SystemState state;
    for (std::size_t k = 0; k < cavity.size(); ++k) {
        if (cavity[k] == complex{0.0}) continue;
        for (int l1 = 0; l1 < 2; ++l1) {
            for (int l2 = 0; l2 < 2; ++l2) {
                const complex amp = cavity[k] * a1[l1] * a2[l2];
                if (amp == complex{0.0}) continue;
                state.add_amplitude({static_cast<int>(k), static_cast<Level>(l1), static_cast<Level>(l2)}, amp);
            }
        }
    }
    return state;
}

}  // namespace tavis
