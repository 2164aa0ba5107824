// dynamics.hpp: Schroedinger evolution per manifold, dynamical phases,
// adiabaticity diagnostics and the effective two-level crossing model.

#pragma once

#include "tavis/model.hpp"
#include "tavis/spectrum.hpp"

#include <cstddef>
#include <vector>

namespace tavis {

struct TauSpan {
    double begin{0.0};
    double end{0.0};
};

// [-(delta + 6), delta + 6]
TauSpan default_span(const PulseConfig& cfg) noexcept;

struct EvolveOptions {
    double abs_tol{1e-12};
    double rel_tol{1e-12};
    std::size_t samples{2001};      // uniform tau grid, endpoints included
    std::size_t max_steps{2000000};  // per block
};

struct EvolutionResult {
    PulseConfig pulse;
    std::vector<double> taus;
    std::vector<SystemState> trajectory;
    SystemState final_state;
    double norm_drift{0.0};  // max |1 - <psi|psi>| over the samples
};

// Integrates i d(psi)/d(tau) = 2 g sigma H'(tau) psi block by block. The initial
// state must be normalised to 1e-8. Throws IntegrationError when the stepper
// cannot meet the tolerance.
EvolutionResult evolve(const SystemState& initial, const PulseConfig& cfg, TauSpan span,
                       const EvolveOptions& options = {});

// Initial state equal to one frame vector of manifold n at tau.
SystemState frame_state(int n, int branch, double tau, const PulseConfig& cfg, FrameOrdering ordering);

// 2 g sigma * integral of E'_branch over the span, in the crossing-aware labelling
// (branch 1 = 1', 2 = 2'). Adaptive Gauss-Kronrod, relative tolerance 1e-10.
double dynamical_phase(int branch, int n, const PulseConfig& cfg, TauSpan span);

enum class DerivativeMethod { analytic, finite_difference };

// |<Psi_i| dH'/dtau |Psi_j>| / (2 |E_i - E_j|^2) with raw labels; tau = 0 is
// taken from the left. Throws DegeneratePointError when |E_i - E_j| <= 1e-12.
double adiabaticity_q(int i, int j, int n, double tau, double delta,
                      DerivativeMethod method = DerivativeMethod::analytic, double step = 0.01);

// max over the grid of adiabaticity_q, skipping degenerate samples.
double max_adiabaticity_q(int i, int j, int n, double delta, TauSpan span, std::size_t samples);

// |1 - |<Psi_j(tau)|psi(tau)>|^2| on every trajectory sample, block n + 2.
std::vector<double> nonadiabaticity_eps(int branch, const EvolutionResult& result, int n,
                                        FrameOrdering ordering = FrameOrdering::crossing_aware);

struct EffectiveCrossingModel {
    int n{0};
    double omega1{0.0};
    double omega2{0.0};

    // In the fixed basis psi_j = Psi_j(0-), psi_3,4 = Psi_3,4(0):
    // diag(-4 w1 W-, 4 w1 W-, -w2 W+, w2 W+) plus W-/(4 w2) couplings.
    Eigen::Matrix4d hamiltonian(double tau, const PulseConfig& cfg) const;
    // Columns psi_1..psi_4 over manifold_basis(n + 2).
    Eigen::Matrix4d basis() const;
};

EffectiveCrossingModel effective_crossing_model(int n);

// eta1 -/+ eta2
double omega_minus(double tau, const PulseConfig& cfg) noexcept;
double omega_plus(double tau, const PulseConfig& cfg) noexcept;

struct EffectiveEvolution {
    EffectiveCrossingModel model;
    std::vector<double> taus;
    std::vector<complex> c1;
    std::vector<complex> c2;
    bool outside_validity{false};  // window leaves |tau| <= 0.25 delta
};

// Evolution after eliminating psi_3,4: c1 and c2 only pick up opposite phases
// exp(+/- i 2 g sigma 4 w1 int W- dtau).
EffectiveEvolution effective_two_level_evolve(int n, const PulseConfig& cfg, TauSpan window,
                                              complex c1_start, complex c2_start,
                                              std::size_t samples = 201);

}  // namespace tavis
