// spectrum.hpp: closed-form adiabatic energies and eigenstates of one manifold.
//
// Branch numbering: E1,2 = -/+ E_minus and E3,4 = -/+ E_plus. The two inner
// branches touch zero at tau = 0, where the raw labels 1 and 2 swap eigenvector
// families. The crossing-aware frame relabels them so that states 1' and 2' are
// smooth through the crossing.

#pragma once

#include "tavis/model.hpp"

#include <array>

namespace tavis {

enum class FrameOrdering { raw, crossing_aware };
enum class Side { left, right };  // tau -> 0- or tau -> 0+

// Building blocks of the closed forms, evaluated without cancellation.
struct SpectralTerms {
    int n{0};
    double eta1{0.0};
    double eta2{0.0};
    double sum_sq{0.0};   // eta1^2 + eta2^2
    double diff_sq{0.0};  // eta1^2 - eta2^2
    double f{0.0};        // F_n
    double e_plus{0.0};
    double e_minus{0.0};
};

SpectralTerms spectral_terms(int n, double tau, const PulseConfig& cfg);

// det(H - E) for the n-manifold (4x4 for n >= 0; for n = -1 the quartic keeps
// the spurious root E = 0 of the deleted row).
double characteristic_poly(double energy, int n, double tau, const PulseConfig& cfg);

// (E1, E2, E3, E4); n >= -1. For n = -1 this is (0, 0, -E, +E) with E = sqrt(eta1^2 + eta2^2).
std::array<double, 4> adiabatic_energies(int n, double tau, const PulseConfig& cfg);

// Coefficients of the eigenstates, see adiabatic_states for the layout.
struct StateCoefficients {
    double a_plus{0.0}, b_plus{0.0}, c_plus{0.0}, d_plus{0.0};
    double a_minus{0.0}, b_minus{0.0}, c_minus{0.0}, d_minus{0.0};
};

// Raw coefficients for the side of the degeneracy given by `side` (used only when
// tau == 0; otherwise the sign of tau decides).
StateCoefficients state_coefficients(int n, double tau, const PulseConfig& cfg, Side side);

struct AdiabaticFrame {
    double tau{0.0};
    int n{0};
    std::array<double, 4> energies{};
    std::array<Eigen::Vector4d, 4> states{};
    FrameOrdering ordering{FrameOrdering::raw};
};

// Raw frame over manifold_basis(n + 2):
//   Psi_1,2 = A-|n,e1e2> + D-|n+2,g1g2> +/- (B-|n+1,g1e2> - C-|n+1,e1g2>)
//   Psi_3,4 = A+|n,e1e2> + D+|n+2,g1g2> +/- (B+|n+1,g1e2> - C+|n+1,e1g2>)
// Requires n >= 0. Throws DegeneratePointError at tau == 0.
AdiabaticFrame adiabatic_states(int n, double tau, const PulseConfig& cfg);
// Same, but tau == 0 is resolved as the one-sided limit from `side`.
AdiabaticFrame adiabatic_states(int n, double tau, const PulseConfig& cfg, Side side);

// Psi'_1 = Psi_1 for tau < 0 and Psi_2 for tau > 0 (Psi'_2 the other way round).
// Smooth at tau = 0, where it takes the common one-sided limit.
AdiabaticFrame crossing_frame(int n, double tau, const PulseConfig& cfg);

AdiabaticFrame adiabatic_frame(int n, double tau, const PulseConfig& cfg, FrameOrdering ordering,
                               Side tie_break = Side::left);

// Energy of branch `branch` (1..4) in the given ordering, in units of g.
double branch_energy(int branch, int n, double tau, const PulseConfig& cfg, FrameOrdering ordering);

struct DegeneracyData {
    int n{0};
    double alpha{0.0};
    double beta{0.0};
    Eigen::Vector4d plus_state;   // |n+1>(|g1e2> + |e1g2>)/sqrt2
    Eigen::Vector4d minus_state;  // |n+1>(|g1e2> - |e1g2>)/sqrt2
    std::array<Eigen::Vector4d, 4> states;  // Psi_1..4 at tau -> 0 from `side`
};

// Closed-form states at the degeneracy point. Independent of delta and of the
// coupling amplitude.
DegeneracyData degeneracy_states(int n, Side side);

}  // namespace tavis
