// gates.hpp: asymptotic scattering map of one cavity passage and the quantum
// information protocols built from it (entanglement, state mapping, SWAP, phase
// and C-NOT gates), in ideal-map or full-dynamics mode.

#pragma once

#include "tavis/dynamics.hpp"
#include "tavis/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tavis {

// Bare-state transformation of one passage for manifold n:
//   |n,e1e2>   -> |n,e1e2>
//   |n+1,g1e2> -> -|n+1,e1g2>
//   |n+1,e1g2> -> cos(phi)|n+1,g1e2> - i sin(phi)|n+2,g1g2>
//   |n+2,g1g2> -> cos(phi)|n+2,g1g2> - i sin(phi)|n+1,g1e2>
// Column k is the image of basis state k of manifold_basis(n + 2).
struct ScatteringMap {
    int n{0};
    double phi{0.0};
    Eigen::MatrixXcd matrix;
};

ScatteringMap scattering_map(int n, double phi);

// Atomic SWAP (|g1e2> <-> |e1g2>, field untouched) over manifold_basis(n + 2).
Eigen::MatrixXcd atomic_swap_matrix(int n);
// Rotation on {|n+1,g1e2>, |n+2,g1g2>} conditioned on atom 1 in |g>, with
// |n+1,e1g2> -> -|n+1,e1g2>. scattering_map = conditional_rotation * atomic_swap.
Eigen::MatrixXcd conditional_rotation_matrix(int n, double phi);

enum class Mode { ideal, dynamics };

struct CavityPass {
    PulseConfig pulse;
};

struct QubitRotation {
    Atom atom{Atom::first};
    Eigen::Matrix2cd unitary;  // over (|g>, |e>)
};

using ProtocolStep = std::variant<CavityPass, QubitRotation>;

Eigen::Matrix2cd hadamard();
// |g> -> |g>, |e> -> phase |e>
Eigen::Matrix2cd phase_rotation(complex phase);

// Applies a single-qubit unitary to one atom on every bare component. Throws
// std::invalid_argument if the matrix is not unitary to 1e-10.
SystemState apply_rotation(const SystemState& state, const QubitRotation& rotation);

// Ideal mode: scattering_map with phi_n(g sigma, delta) on every populated
// manifold. Dynamics mode: evolve over default_span(pulse).
SystemState apply_cavity_pass(const SystemState& state, const CavityPass& pass, Mode mode,
                              const EvolveOptions& options = {});

// Runs the steps in order; cavity passes are strictly sequential.
SystemState propagate(const SystemState& initial, std::span<const ProtocolStep> steps, Mode mode,
                      const EvolveOptions& options = {});

struct PassParameters {
    double g_sigma{0.0};
    double delta{0.0};
    int multiplicity{0};
    double target_angle{0.0};  // requested phi_{-1}
    double phi_minus1{0.0};    // phi_{-1} produced by g_sigma
};

struct GateEntry {
    std::string input_label;
    SystemState input;
    SystemState target;
    SystemState output;
    double fidelity{0.0};            // |<target|output>|^2
    double leaked_probability{0.0};  // 1 - population of the intended subspace
};

struct GateReport {
    std::string protocol;
    Mode mode{Mode::ideal};
    std::vector<PassParameters> passes;
    std::vector<GateEntry> entries;

    double mean_fidelity() const;
    double min_fidelity() const;
    double max_leak() const;
};

struct LabeledInput {
    std::string label;
    SystemState input;
    SystemState target;
};

// Predicate selecting the intended output subspace (for the leak figure).
using SubspaceFilter = bool (*)(const BareState&);
bool vacuum_subspace(const BareState& state);
bool atoms_ground_subspace(const BareState& state);

GateReport apply_protocol(const std::string& name, std::span<const LabeledInput> inputs,
                          std::span<const ProtocolStep> steps, Mode mode, SubspaceFilter intended,
                          const EvolveOptions& options = {});

struct ProtocolSettings {
    double delta{1.0};
    double min_g_sigma{12.0};  // dynamics mode only; ideal mode uses the bare angle
    // When set, every passage uses this g sigma and the requested angles are ignored.
    std::optional<double> fixed_g_sigma;
    EvolveOptions evolve{};
};

// Relative errors applied to every cavity passage: sigma -> sigma (1 + sigma_error),
// delta_t -> delta_t (1 + delay_error), so g sigma scales with sigma and
// delta with (1 + delay_error) / (1 + sigma_error).
struct Perturbation {
    double sigma_error{0.0};
    double delay_error{0.0};
};

// Cavity passage producing phi_{-1} = target (mod 2 pi when the g sigma floor applies).
CavityPass pass_for_angle(double target, Mode mode, const ProtocolSettings& settings,
                          const Perturbation& perturbation = {}, PassParameters* report = nullptr);

enum class ProtocolKind {
    swap,
    phase,
    cnot,
    max_entangle,
    map_atom_to_atom,
    map_cavity_to_atom,
    map_atom_to_cavity
};

std::string protocol_name(ProtocolKind kind);
ProtocolKind parse_protocol(const std::string& name);

GateReport swap_gate(Mode mode, const ProtocolSettings& settings = {}, const Perturbation& p = {});
GateReport phase_gate(Mode mode, const ProtocolSettings& settings = {}, const Perturbation& p = {});
GateReport cnot_gate(Mode mode, const ProtocolSettings& settings = {}, const Perturbation& p = {});
// Both atoms in (|g> + e^{i theta}|e>)/sqrt2 (theta2 = 0), one pass with
// phi_{-1} = 2 pi, then a Hadamard on atom 1. Target is
// (e^{i theta1}|g1e2> + |e1g2>)/sqrt2 with the cavity empty.
GateReport max_entangle(Mode mode, double theta1 = 0.0, const ProtocolSettings& settings = {},
                        const Perturbation& p = {});
GateReport map_atom_to_atom(double alpha, double beta, Mode mode, const ProtocolSettings& settings = {},
                            const Perturbation& p = {});
GateReport map_cavity_to_atom(double alpha, double beta, Mode mode, const ProtocolSettings& settings = {},
                              const Perturbation& p = {}, double target_angle = 1.5707963267948966);
GateReport map_atom_to_cavity(double alpha, double beta, Mode mode, const ProtocolSettings& settings = {},
                              const Perturbation& p = {}, double target_angle = 1.5707963267948966);

GateReport run_protocol(ProtocolKind kind, Mode mode, const ProtocolSettings& settings = {},
                        const Perturbation& p = {});

// Amplitudes over (g1g2, g1e2, e1g2, e1e2).
struct TwoQubitPureState {
    std::array<complex, 4> amplitudes{};
};

// 2 |a_gg a_ee - a_ge a_eg|; throws unless normalised to 1e-12.
double concurrence(const TwoQubitPureState& state);

// Zero-photon part of `state`, renormalised. Throws if it has no weight.
TwoQubitPureState postselect_vacuum(const SystemState& state);

struct EntanglementResult {
    SystemState output;               // unconditional output
    double p_en{0.0};                 // probability of the zero-photon branch
    double p_en_closed_form{0.0};     // 1 - beta1^2 alpha2^2 sin^2(phi)
    TwoQubitPureState postselected;   // zero-photon atomic state, renormalised
    double concurrence{0.0};
};

// One passage with the cavity empty, ideal map at angle phi_{-1} = phi.
EntanglementResult entangle_atoms(const QubitAmplitudes& atom1, const QubitAmplitudes& atom2, double phi);
// Same with an explicit passage (ideal or dynamics).
EntanglementResult entangle_atoms(const QubitAmplitudes& atom1, const QubitAmplitudes& atom2,
                                  const CavityPass& pass, Mode mode, const EvolveOptions& options = {});

struct ScanRow {
    double sigma_error{0.0};
    double delay_error{0.0};
    double fidelity{0.0};  // mean over the protocol's inputs
    double leaked_probability{0.0};
};

// Reruns the protocol in dynamics mode on every (sigma_error, delay_error) pair,
// on `jobs` worker threads; rows come back in grid order (sigma major).
std::vector<ScanRow> fidelity_scan(ProtocolKind kind, std::span<const double> sigma_errors,
                                   std::span<const double> delay_errors, const ProtocolSettings& settings = {},
                                   unsigned jobs = 1);

}  // namespace tavis
