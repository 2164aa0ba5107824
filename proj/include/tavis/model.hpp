// model.hpp: bare basis, Gaussian coupling pulses and the interaction Hamiltonian
// for two two-level atoms sharing one cavity mode.
//
// Everything is dimensionless: energies in units of the peak coupling g and time
// in tau = t / (2 sigma). The only physical parameters left are g*sigma and the
// half-delay delta.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tavis {

using complex = std::complex<double>;

enum class Atom { first = 1, second = 2 };
enum class Level { ground = 0, excited = 1 };

// Lab-frame parameters of the atomic beam. Optional; only used to derive
// (g*sigma, delta) and to report physical time scales.
struct PhysicalPulse {
    double g{0.0};        // rad/s
    double sigma{0.0};    // s
    double v{0.0};        // m/s
    double x0{0.0};       // m
    double delta_t{0.0};  // s, half of the delay between the atoms
};

struct PulseConfig {
    double g_sigma{1.0};
    double delta{0.0};
    std::optional<PhysicalPulse> physical;

    PulseConfig() = default;
    PulseConfig(double g_sigma_, double delta_) : g_sigma(g_sigma_), delta(delta_) {}

    // sigma = x0 / v, delta = delta_t / (2 sigma); throws if g, v, x0 are not positive.
    static PulseConfig from_physical(double g, double v, double x0, double delta_t);

    // Throws std::invalid_argument unless g_sigma > 0, delta >= 0 and the
    // physical block (if any) is consistent to 1e-12 relative.
    void validate() const;

    // Factor multiplying H/g in i d(psi)/d(tau) = 2 g sigma H' psi.
    double time_scale() const noexcept { return 2.0 * g_sigma; }
};

// Default half-width of the integration window: couplings are below 1e-15 outside.
inline double default_window(const PulseConfig& cfg) noexcept { return cfg.delta + 6.0; }

// eta_j(tau) / g.
double coupling_envelope(Atom atom, double tau, const PulseConfig& cfg) noexcept;
// d(eta_j/g)/d tau.
double coupling_envelope_derivative(Atom atom, double tau, const PulseConfig& cfg) noexcept;

struct Couplings {
    double eta1{0.0};
    double eta2{0.0};
};
Couplings couplings(double tau, const PulseConfig& cfg) noexcept;
Couplings coupling_derivatives(double tau, const PulseConfig& cfg) noexcept;

struct BareState {
    int photons{0};
    Level atom1{Level::ground};
    Level atom2{Level::ground};

    int excitations() const noexcept {
        return photons + static_cast<int>(atom1) + static_cast<int>(atom2);
    }
    // e.g. "|1,g1e2>"
    std::string label() const;

    auto operator<=>(const BareState&) const = default;
};

// Ordered basis of the manifold with N total excitations:
//   N >= 2: |n,e1e2>, |n+1,g1e2>, |n+1,e1g2>, |n+2,g1g2>   with n = N - 2
//   N == 1: |0,g1e2>, |0,e1g2>, |1,g1g2>
//   N == 0: |0,g1g2>
struct ManifoldBasis {
    int excitations{0};
    std::vector<BareState> states;

    std::size_t dimension() const noexcept { return states.size(); }
    // Index of `state` in this basis, or -1.
    int index_of(const BareState& state) const noexcept;
    // Photon index n used by the spectral formulas (N - 2; -1 for N == 1).
    int photon_index() const noexcept { return excitations - 2; }
};

ManifoldBasis manifold_basis(int excitations);

// Real symmetric H(tau)/g over manifold_basis(N).
Eigen::MatrixXd build_hamiltonian(int excitations, double tau, const PulseConfig& cfg);
// d(H/g)/d tau, analytic.
Eigen::MatrixXd hamiltonian_derivative(int excitations, double tau, const PulseConfig& cfg);

// out = (H/g) * in without materialising the matrix. Spans must have the
// manifold dimension.
void apply_hamiltonian(int excitations, const Couplings& eta, std::span<const complex> in,
                       std::span<complex> out) noexcept;

struct ManifoldBlock {
    ManifoldBasis basis;
    Eigen::VectorXcd amplitudes;

    double norm_squared() const { return amplitudes.squaredNorm(); }
};

// General pure state of atoms + cavity, stored per excitation manifold.
class SystemState {
public:
    SystemState() = default;

    complex amplitude(const BareState& state) const;
    void set_amplitude(const BareState& state, complex value);
    void add_amplitude(const BareState& state, complex value);

    double norm_squared() const;
    void normalize();
    // Drop blocks whose total weight is below `threshold`.
    void prune(double threshold = 0.0);

    const std::map<int, ManifoldBlock>& blocks() const noexcept { return blocks_; }
    std::map<int, ManifoldBlock>& blocks() noexcept { return blocks_; }
    const ManifoldBlock* block(int excitations) const;
    ManifoldBlock& ensure_block(int excitations);

    // All (state, amplitude) pairs with nonzero amplitude, ordered by manifold then basis.
    std::vector<std::pair<BareState, complex>> entries() const;

    // <this|other>
    complex inner(const SystemState& other) const;

private:
    std::map<int, ManifoldBlock> blocks_;
};

// alpha|g> + beta e^{i theta}|e>, alpha and beta real.
struct QubitAmplitudes {
    double alpha{1.0};
    double beta{0.0};
    double theta{0.0};
};

// |cavity> (x) |atom1> (x) |atom2>; cavity[k] is the amplitude of Fock state |k>.
// Throws std::invalid_argument unless every factor is normalised to 1e-12.
SystemState decompose_product_state(const QubitAmplitudes& atom1, const QubitAmplitudes& atom2,
                                    std::span<const complex> cavity);

}  // namespace tavis
