#include "tavis/gates.hpp"

#include "tavis/angle.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace tavis {

namespace {

constexpr double kPi = std::numbers::pi;
const complex kI{0.0, 1.0};

BareState bare(int photons, Level a1, Level a2) { return {photons, a1, a2}; }

constexpr Level G = Level::ground;
constexpr Level E = Level::excited;

SystemState basis_state(const BareState& s) {
    SystemState out;
    out.set_amplitude(s, 1.0);
    return out;
}

// Applies the ideal map block by block, with the angle chosen per manifold.
template <class AngleOf>
SystemState apply_ideal_map(const SystemState& state, AngleOf&& angle_of) {
    SystemState out;
    for (const auto& [excitations, blk] : state.blocks()) {
        auto& target = out.ensure_block(excitations);
        if (excitations == 0) {
            target.amplitudes = blk.amplitudes;
            continue;
        }
        const int n = excitations - 2;
        target.amplitudes = scattering_map(n, angle_of(n)).matrix * blk.amplitudes;
    }
    return out;
}

double subspace_population(const SystemState& state, SubspaceFilter filter) {
    double total = 0.0;
    for (const auto& [s, a] : state.entries()) {
        if (filter(s)) total += std::norm(a);
    }
    return total;
}

Eigen::Matrix2cd diagonal_rotation(complex excited_factor) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m(1, 1) = excited_factor;
    return m;
}

std::vector<LabeledInput> computational_inputs(const std::array<SystemState, 4>& targets) {
    // order: e1e2, g1e2, e1g2, g1g2 (cavity empty)
    const std::array<BareState, 4> states{bare(0, E, E), bare(0, G, E), bare(0, E, G), bare(0, G, G)};
    std::vector<LabeledInput> inputs;
    for (std::size_t k = 0; k < 4; ++k) {
        inputs.push_back({states[k].label(), basis_state(states[k]), targets[k]});
    }
    return inputs;
}

SystemState scaled(const BareState& s, complex factor) {
    SystemState out;
    out.set_amplitude(s, factor);
    return out;
}

}  // namespace

ScatteringMap scattering_map(int n, double phi) {
    if (n < -1) throw std::invalid_argument("scattering_map: n must be >= -1");
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = 1.0;
    u(2, 1) = -1.0;
    u(1, 2) = c;
    u(3, 2) = -kI * s;
    u(3, 3) = c;
    u(1, 3) = -kI * s;
    ScatteringMap map;
    map.n = n;
    map.phi = phi;
    map.matrix = n == -1 ? Eigen::MatrixXcd(u.bottomRightCorner(3, 3)) : Eigen::MatrixXcd(u);
    return map;
}

Eigen::MatrixXcd atomic_swap_matrix(int n) {
    if (n < -1) throw std::invalid_argument("atomic_swap_matrix: n must be >= -1");
    Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
    p(0, 0) = 1.0;
    p(1, 2) = 1.0;
    p(2, 1) = 1.0;
    p(3, 3) = 1.0;
    return n == -1 ? Eigen::MatrixXcd(p.bottomRightCorner(3, 3)) : Eigen::MatrixXcd(p);
}

Eigen::MatrixXcd conditional_rotation_matrix(int n, double phi) {
    if (n < -1) throw std::invalid_argument("conditional_rotation_matrix: n must be >= -1");
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
    r(0, 0) = 1.0;
    r(1, 1) = c;
    r(3, 1) = -kI * s;
    r(2, 2) = -1.0;
    r(3, 3) = c;
    r(1, 3) = -kI * s;
    return n == -1 ? Eigen::MatrixXcd(r.bottomRightCorner(3, 3)) : Eigen::MatrixXcd(r);
}

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd h;
    const double r = std::sqrt(0.5);
    h << r, r, r, -r;
    return h;
}

Eigen::Matrix2cd phase_rotation(complex phase) { return diagonal_rotation(phase); }

SystemState apply_rotation(const SystemState& state, const QubitRotation& rotation) {
    const Eigen::Matrix2cd check = rotation.unitary.adjoint() * rotation.unitary - Eigen::Matrix2cd::Identity();
    if (!rotation.unitary.allFinite() || check.cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("apply_rotation: single-qubit matrix is not unitary");
    }
    SystemState out;
    for (const auto& [s, a] : state.entries()) {
        const int from = static_cast<int>(rotation.atom == Atom::first ? s.atom1 : s.atom2);
        for (int to = 0; to < 2; ++to) {
            const complex factor = rotation.unitary(to, from);
            if (factor == complex{0.0}) continue;
            BareState moved = s;
            (rotation.atom == Atom::first ? moved.atom1 : moved.atom2) = static_cast<Level>(to);
            out.add_amplitude(moved, factor * a);
        }
    }
    return out;
}

SystemState apply_cavity_pass(const SystemState& state, const CavityPass& pass, Mode mode,
                              const EvolveOptions& options) {
    pass.pulse.validate();
    if (mode == Mode::ideal) {
        return apply_ideal_map(state, [&](int n) { return mixing_angle(n, pass.pulse.g_sigma, pass.pulse.delta); });
    }
    EvolveOptions opts = options;
    opts.samples = 2;  // only the final state is needed
    return evolve(state, pass.pulse, default_span(pass.pulse), opts).final_state;
}

SystemState propagate(const SystemState& initial, std::span<const ProtocolStep> steps, Mode mode,
                      const EvolveOptions& options) {
    SystemState state = initial;
    for (const auto& step : steps) {
        if (const auto* pass = std::get_if<CavityPass>(&step)) {
            state = apply_cavity_pass(state, *pass, mode, options);
        } else {
            state = apply_rotation(state, std::get<QubitRotation>(step));
        }
    }
    return state;
}

double GateReport::mean_fidelity() const {
    if (entries.empty()) return 0.0;
    double total = 0.0;
    for (const auto& e : entries) total += e.fidelity;
    return total / static_cast<double>(entries.size());
}

double GateReport::min_fidelity() const {
    double m = entries.empty() ? 0.0 : 1.0;
    for (const auto& e : entries) m = std::min(m, e.fidelity);
    return m;
}

double GateReport::max_leak() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.leaked_probability);
    return m;
}

bool vacuum_subspace(const BareState& state) { return state.photons == 0; }

bool atoms_ground_subspace(const BareState& state) {
    return state.atom1 == Level::ground && state.atom2 == Level::ground;
}

GateReport apply_protocol(const std::string& name, std::span<const LabeledInput> inputs,
                          std::span<const ProtocolStep> steps, Mode mode, SubspaceFilter intended,
                          const EvolveOptions& options) {
    GateReport report;
    report.protocol = name;
    report.mode = mode;
    for (const auto& in : inputs) {
        GateEntry entry;
        entry.input_label = in.label;
        entry.input = in.input;
        entry.target = in.target;
        entry.output = propagate(in.input, steps, mode, options);
        entry.fidelity = std::clamp(std::norm(in.target.inner(entry.output)), 0.0, 1.0);
        entry.leaked_probability = std::clamp(1.0 - subspace_population(entry.output, intended), 0.0, 1.0);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

CavityPass pass_for_angle(double target, Mode mode, const ProtocolSettings& settings,
                          const Perturbation& perturbation, PassParameters* report) {
    if (!(1.0 + perturbation.sigma_error > 0.0) || !(1.0 + perturbation.delay_error >= 0.0)) {
        throw std::invalid_argument("pass_for_angle: perturbation must keep sigma and the delay positive");
    }
    PassParameters params;
    params.delta = settings.delta;
    params.target_angle = target;
    if (settings.fixed_g_sigma) {
        params.g_sigma = *settings.fixed_g_sigma;
    } else {
        const auto sol =
            solve_gsigma_for_angle(target, -1, settings.delta, mode == Mode::dynamics ? settings.min_g_sigma : 0.0);
        params.g_sigma = sol.g_sigma;
        params.multiplicity = sol.multiplicity;
    }
    // sigma -> sigma (1 + e_s) rescales g sigma; delta = delta_t / (2 sigma).
    params.g_sigma *= 1.0 + perturbation.sigma_error;
    params.delta *= (1.0 + perturbation.delay_error) / (1.0 + perturbation.sigma_error);
    params.phi_minus1 = mixing_angle(-1, params.g_sigma, params.delta);
    if (report) *report = params;
    return CavityPass{PulseConfig(params.g_sigma, params.delta)};
}

std::string protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::swap:
            return "swap";
        case ProtocolKind::phase:
            return "phase";
        case ProtocolKind::cnot:
            return "cnot";
        case ProtocolKind::max_entangle:
            return "entangle";
        case ProtocolKind::map_atom_to_atom:
            return "map_atom_to_atom";
        case ProtocolKind::map_cavity_to_atom:
            return "map_cavity_to_atom";
        case ProtocolKind::map_atom_to_cavity:
            return "map_atom_to_cavity";
    }
    return "unknown";
}

ProtocolKind parse_protocol(const std::string& name) {
    for (auto k : {ProtocolKind::swap, ProtocolKind::phase, ProtocolKind::cnot, ProtocolKind::max_entangle,
                   ProtocolKind::map_atom_to_atom, ProtocolKind::map_cavity_to_atom,
                   ProtocolKind::map_atom_to_cavity}) {
        if (protocol_name(k) == name) return k;
    }
    throw std::invalid_argument("unknown protocol: " + name);
}

GateReport swap_gate(Mode mode, const ProtocolSettings& settings, const Perturbation& p) {
    PassParameters params;
    const std::vector<ProtocolStep> steps{pass_for_angle(kPi, mode, settings, p, &params)};
    const auto inputs = computational_inputs({basis_state(bare(0, E, E)), scaled(bare(0, E, G), -1.0),
                                              scaled(bare(0, G, E), -1.0), basis_state(bare(0, G, G))});
    auto report = apply_protocol("swap", inputs, steps, mode, vacuum_subspace, settings.evolve);
    report.passes = {params};
    return report;
}

namespace {

std::vector<ProtocolStep> phase_steps(Mode mode, const ProtocolSettings& settings, const Perturbation& p,
                                      std::vector<PassParameters>& passes) {
    passes.assign(2, {});
    return {pass_for_angle(2.0 * kPi, mode, settings, p, &passes[0]),
            pass_for_angle(kPi, mode, settings, p, &passes[1])};
}

}  // namespace

GateReport phase_gate(Mode mode, const ProtocolSettings& settings, const Perturbation& p) {
    std::vector<PassParameters> passes;
    const auto steps = phase_steps(mode, settings, p, passes);
    const auto inputs = computational_inputs({basis_state(bare(0, E, E)), basis_state(bare(0, G, E)),
                                              scaled(bare(0, E, G), -1.0), basis_state(bare(0, G, G))});
    auto report = apply_protocol("phase", inputs, steps, mode, vacuum_subspace, settings.evolve);
    report.passes = passes;
    return report;
}

GateReport cnot_gate(Mode mode, const ProtocolSettings& settings, const Perturbation& p) {
    std::vector<PassParameters> passes;
    auto steps = phase_steps(mode, settings, p, passes);
    const QubitRotation h{Atom::first, hadamard()};
    steps.insert(steps.begin(), h);
    steps.push_back(h);
    const auto inputs = computational_inputs({basis_state(bare(0, E, E)), basis_state(bare(0, G, E)),
                                              basis_state(bare(0, G, G)), basis_state(bare(0, E, G))});
    auto report = apply_protocol("cnot", inputs, steps, mode, vacuum_subspace, settings.evolve);
    report.passes = passes;
    return report;
}

GateReport max_entangle(Mode mode, double theta1, const ProtocolSettings& settings, const Perturbation& p) {
    const double r = std::sqrt(0.5);
    const std::array<complex, 1> vacuum{1.0};
    LabeledInput in;
    in.label = "product";
    in.input = decompose_product_state({r, r, theta1}, {r, r, 0.0}, vacuum);
    in.target.set_amplitude(bare(0, G, E), r * std::polar(1.0, theta1));
    in.target.set_amplitude(bare(0, E, G), r);

    PassParameters params;
    const std::vector<ProtocolStep> steps{pass_for_angle(2.0 * kPi, mode, settings, p, &params),
                                          QubitRotation{Atom::first, hadamard()}};
    auto report = apply_protocol("entangle", std::span(&in, 1), steps, mode, vacuum_subspace, settings.evolve);
    report.passes = {params};
    return report;
}

GateReport map_atom_to_atom(double alpha, double beta, Mode mode, const ProtocolSettings& settings,
                            const Perturbation& p) {
    const std::array<complex, 1> vacuum{1.0};
    LabeledInput in;
    in.label = "atom2";
    in.input = decompose_product_state({1.0, 0.0, 0.0}, {alpha, beta, 0.0}, vacuum);
    in.target = decompose_product_state({alpha, beta, 0.0}, {1.0, 0.0, 0.0}, vacuum);

    // Only the swap rows (ee, g1e2) act, so any angle does; pi keeps g sigma small.
    PassParameters params;
    const std::vector<ProtocolStep> steps{pass_for_angle(kPi, mode, settings, p, &params),
                                          QubitRotation{Atom::first, diagonal_rotation(-1.0)}};
    auto report =
        apply_protocol("map_atom_to_atom", std::span(&in, 1), steps, mode, vacuum_subspace, settings.evolve);
    report.passes = {params};
    return report;
}

GateReport map_cavity_to_atom(double alpha, double beta, Mode mode, const ProtocolSettings& settings,
                              const Perturbation& p, double target_angle) {
    const std::array<complex, 2> cavity{alpha, beta};
    const std::array<complex, 1> vacuum{1.0};
    LabeledInput in;
    in.label = "cavity";
    in.input = decompose_product_state({1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, cavity);
    in.target = decompose_product_state({1.0, 0.0, 0.0}, {alpha, beta, 0.0}, vacuum);

    PassParameters params;
    const std::vector<ProtocolStep> steps{pass_for_angle(target_angle, mode, settings, p, &params),
                                          QubitRotation{Atom::second, diagonal_rotation(kI)}};
    auto report =
        apply_protocol("map_cavity_to_atom", std::span(&in, 1), steps, mode, vacuum_subspace, settings.evolve);
    report.passes = {params};
    return report;
}

GateReport map_atom_to_cavity(double alpha, double beta, Mode mode, const ProtocolSettings& settings,
                              const Perturbation& p, double target_angle) {
    const std::array<complex, 2> cavity{alpha, beta};
    const std::array<complex, 1> vacuum{1.0};
    LabeledInput in;
    in.label = "atom1";
    in.input = decompose_product_state({alpha, beta, 0.0}, {1.0, 0.0, 0.0}, vacuum);
    in.target = decompose_product_state({1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, cavity);

    PassParameters params;
    const std::vector<ProtocolStep> steps{QubitRotation{Atom::first, diagonal_rotation(kI)},
                                          pass_for_angle(target_angle, mode, settings, p, &params)};
    auto report = apply_protocol("map_atom_to_cavity", std::span(&in, 1), steps, mode, atoms_ground_subspace,
                                 settings.evolve);
    report.passes = {params};
    return report;
}

GateReport run_protocol(ProtocolKind kind, Mode mode, const ProtocolSettings& settings, const Perturbation& p) {
    const double r = std::sqrt(0.5);
    switch (kind) {
        case ProtocolKind::swap:
            return swap_gate(mode, settings, p);
        case ProtocolKind::phase:
            return phase_gate(mode, settings, p);
        case ProtocolKind::cnot:
            return cnot_gate(mode, settings, p);
        case ProtocolKind::max_entangle:
            return max_entangle(mode, 0.0, settings, p);
        case ProtocolKind::map_atom_to_atom:
            return map_atom_to_atom(r, r, mode, settings, p);
        case ProtocolKind::map_cavity_to_atom:
            return map_cavity_to_atom(r, r, mode, settings, p);
        case ProtocolKind::map_atom_to_cavity:
            return map_atom_to_cavity(r, r, mode, settings, p);
    }
    throw std::invalid_argument("run_protocol: unknown protocol");
}

double concurrence(const TwoQubitPureState& state) {
    const auto& a = state.amplitudes;
    double norm = 0.0;
    for (const auto& v : a) norm += std::norm(v);
    if (std::abs(norm - 1.0) > 1e-12) throw std::invalid_argument("concurrence: state is not normalised");
    return std::min(1.0, 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]));
}

TwoQubitPureState postselect_vacuum(const SystemState& state) {
    TwoQubitPureState out;
    out.amplitudes = {state.amplitude(bare(0, G, G)), state.amplitude(bare(0, G, E)),
                      state.amplitude(bare(0, E, G)), state.amplitude(bare(0, E, E))};
    double norm = 0.0;
    for (const auto& v : out.amplitudes) norm += std::norm(v);
    if (!(norm > 0.0)) throw std::invalid_argument("postselect_vacuum: no weight in the zero-photon branch");
    for (auto& v : out.amplitudes) v /= std::sqrt(norm);
    return out;
}

namespace {

EntanglementResult finish_entanglement(SystemState output, const QubitAmplitudes& atom1,
                                       const QubitAmplitudes& atom2, double phi) {
    EntanglementResult r;
    r.output = std::move(output);
    r.p_en = subspace_population(r.output, vacuum_subspace);
    const double s = std::sin(phi);
    r.p_en_closed_form = 1.0 - atom1.beta * atom1.beta * atom2.alpha * atom2.alpha * s * s;
    if (r.p_en > 0.0) {
        r.postselected = postselect_vacuum(r.output);
        r.concurrence = concurrence(r.postselected);
    }
    return r;
}

}  // namespace

EntanglementResult entangle_atoms(const QubitAmplitudes& atom1, const QubitAmplitudes& atom2, double phi) {
    const std::array<complex, 1> vacuum{1.0};
    const auto input = decompose_product_state(atom1, atom2, vacuum);
    // With the cavity empty only |0,e1e2> reaches N = 2, and it is left alone at any angle.
    auto output = apply_ideal_map(input, [&](int) { return phi; });
    return finish_entanglement(std::move(output), atom1, atom2, phi);
}

EntanglementResult entangle_atoms(const QubitAmplitudes& atom1, const QubitAmplitudes& atom2,
                                  const CavityPass& pass, Mode mode, const EvolveOptions& options) {
    const std::array<complex, 1> vacuum{1.0};
    const auto input = decompose_product_state(atom1, atom2, vacuum);
    auto output = apply_cavity_pass(input, pass, mode, options);
    return finish_entanglement(std::move(output), atom1, atom2,
                               mixing_angle(-1, pass.pulse.g_sigma, pass.pulse.delta));
}

std::vector<ScanRow> fidelity_scan(ProtocolKind kind, std::span<const double> sigma_errors,
                                   std::span<const double> delay_errors, const ProtocolSettings& settings,
                                   unsigned jobs) {
    std::vector<ScanRow> rows;
    for (double s : sigma_errors) {
        for (double d : delay_errors) rows.push_back({s, d, 0.0, 0.0});
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < rows.size(); k = next++) {
            auto& row = rows[k];
            const auto report = run_protocol(kind, Mode::dynamics, settings, {row.sigma_error, row.delay_error});
            row.fidelity = report.mean_fidelity();
            row.leaked_probability = report.max_leak();
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
    if (count == 1) {
        worker();
        return rows;
    }
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < count; ++t) {
        pool.emplace_back([&] {
            try {
                worker();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = rows.size();
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace tavis
