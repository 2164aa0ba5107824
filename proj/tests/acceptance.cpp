// tavis_acceptance [k...]: runs acceptance criteria 1-9 (all when no argument)
// and prints one PASS/FAIL line per criterion. Exit status 1 if any failed.
#include "oracles.hpp"

#include "tavis/angle.hpp"
#include "tavis/dynamics.hpp"
#include "tavis/gates.hpp"
#include "tavis/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace tavis;

namespace {

constexpr double kPi = std::numbers::pi;

// Q window: outside |tau| <= 4 both couplings vanish and the ratio is meaningless.
constexpr TauSpan kQWindow{-4.0, 4.0};

class Verdict {
public:
    // Records one sub-check; `detail` ends up on the criterion line.
    void check(bool ok, const std::string& detail) {
        pass_ = pass_ && ok;
        if (!detail_.empty()) detail_ += "; ";
        detail_ += (ok ? "" : "FAILED ") + detail;
    }
    bool pass() const { return pass_; }
    const std::string& detail() const { return detail_; }

private:
    bool pass_ = true;
    std::string detail_;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

EvolutionResult run_branch(int n, int branch, double g_sigma, double delta) {
    const PulseConfig cfg(g_sigma, delta);
    const auto span = default_span(cfg);
    return evolve(frame_state(n, branch, span.begin, cfg, FrameOrdering::crossing_aware), cfg, span);
}

double max_eps(int n, int branch, double g_sigma, double delta) {
    return max_of(nonadiabaticity_eps(branch, run_branch(n, branch, g_sigma, delta), n));
}

double amplitude_error(const GateReport& r) {
    double worst = 0.0;
    for (const auto& e : r.entries) {
        SystemState diff = e.output;
        for (const auto& [state, amp] : e.target.entries()) diff.add_amplitude(state, -amp);
        for (const auto& [state, amp] : diff.entries()) worst = std::max(worst, std::abs(amp));
    }
    return worst;
}

void spectral_oracle(Verdict& v) {
    oracle::Sampler rng(1001);
    double energy = 0.0, poly = 0.0, residual = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const int n = rng.integer(0, 10);
        const double tau = rng.uniform(-8.0, 8.0);
        const PulseConfig cfg(1.0, rng.uniform(0.3, 2.0));
        const auto eta = couplings(tau, cfg);
        const Eigen::MatrixXd h = oracle::ladder_hamiltonian(n + 2, eta.eta1, eta.eta2);
        const auto dense = oracle::dense_eigenvalues(h);
        auto e = adiabatic_energies(n, tau, cfg);
        for (double x : e) poly = std::max(poly, std::abs(characteristic_poly(x, n, tau, cfg)));
        std::sort(e.begin(), e.end());
        for (int j = 0; j < 4; ++j) energy = std::max(energy, std::abs(e[static_cast<std::size_t>(j)] - dense[j]));
        const auto frame = adiabatic_states(n, tau, cfg);
        for (std::size_t j = 0; j < 4; ++j) {
            const Eigen::Vector4d r = h * frame.states[j] - frame.energies[j] * frame.states[j];
            residual = std::max(residual, r.norm());
        }
    }
    v.check(energy <= 1e-9, "max |E - dense| " + fmt(energy));
    v.check(poly <= 1e-10, "max |P(E)| " + fmt(poly));
    v.check(residual <= 1e-10, "max residual " + fmt(residual));
}

void crossing(Verdict& v) {
    const PulseConfig cfg(30.0, 1.0);
    const auto span = default_span(cfg);
    const auto r = run_branch(0, 1, 30.0, 1.0);
    const double min_overlap = 1.0 - max_of(nonadiabaticity_eps(1, r, 0));
    v.check(min_overlap >= 0.999, "min overlap " + fmt(min_overlap));
    const double final_raw2 = std::norm(frame_state(0, 2, span.end, cfg, FrameOrdering::raw).inner(r.final_state));
    v.check(final_raw2 >= 0.999, "final |<Psi2|psi>|^2 " + fmt(final_raw2));
    v.check(r.norm_drift <= 1e-8, "norm drift " + fmt(r.norm_drift));
    double worst_im = 0.0;
    for (double g_sigma : {10.0, 20.0, 30.0, 40.0, 50.0}) {
        const PulseConfig c(g_sigma, 1.0);
        const auto s = default_span(c);
        const auto run = run_branch(0, 1, g_sigma, 1.0);
        const auto end = frame_state(0, 1, s.end, c, FrameOrdering::crossing_aware);
        worst_im = std::max(worst_im, std::abs(end.inner(run.final_state).imag()));
    }
    v.check(worst_im <= 1e-2, "max |Im overlap| " + fmt(worst_im));
}

void transfer(Verdict& v) {
    const BareState from{0, Level::ground, Level::excited};
    const BareState to{0, Level::excited, Level::ground};
    double worst_pop = 1.0, worst_phase = 0.0;
    std::string where;
    for (double g_sigma : {20.0, 30.0, 40.0}) {
        for (double delta : {1.0, 1.1, 1.25}) {
            const PulseConfig cfg(g_sigma, delta);
            SystemState s;
            s.set_amplitude(from, 1.0);
            const auto r = evolve(s, cfg, default_span(cfg));
            const complex a = r.final_state.amplitude(to);
            const double pop = std::norm(a);
            const double phase = std::abs(std::abs(std::arg(a)) - kPi);
            if (pop < worst_pop) where = " at g sigma " + fmt(g_sigma) + ", delta " + fmt(delta);
            worst_pop = std::min(worst_pop, pop);
            worst_phase = std::max(worst_phase, phase);
        }
    }
    v.check(worst_pop >= 0.999, "min population " + fmt(worst_pop) + where);
    v.check(worst_phase <= 0.02, "max phase error " + fmt(worst_phase));
}

void diagnostics(Verdict& v) {
    double zero = 0.0;
    for (int n : {0, 1, 3, 7}) {
        for (double delta : {0.5, 1.0, 2.0}) {
            for (double tau = -7.95; tau < 8.0; tau += 0.1) {
                zero = std::max(zero, std::abs(adiabaticity_q(1, 2, n, tau, delta)));
                zero = std::max(zero, std::abs(adiabaticity_q(3, 4, n, tau, delta)));
            }
        }
    }
    v.check(zero <= 1e-12, "max |Q12|, |Q34| " + fmt(zero));
    double dense = 0.0;
    oracle::Sampler rng(1004);
    for (int k = 0; k < 500; ++k) {
        const int n = rng.integer(0, 10);
        const PulseConfig cfg(1.0, rng.uniform(0.3, 2.0));
        const double tau = rng.uniform(0.2, 3.0) * (k % 2 ? 1.0 : -1.0);
        auto ladder = [&](double t) {
            const auto eta = couplings(t, cfg);
            return oracle::ladder_hamiltonian(n + 2, eta.eta1, eta.eta2);
        };
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ladder(tau));
        const Eigen::MatrixXd dh = (ladder(tau + 1e-5) - ladder(tau - 1e-5)) / 2e-5;
        for (auto [a, b] : {std::pair{1, 2}, std::pair{0, 3}}) {
            const double gap = es.eigenvalues()[b] - es.eigenvalues()[a];
            const double elem = es.eigenvectors().col(a).dot(dh * es.eigenvectors().col(b));
            dense = std::max(dense, std::abs(elem) / (2.0 * gap * gap));
        }
    }
    v.check(dense <= 1e-12, "dense-eigen |Q12|, |Q34| " + fmt(dense));
    const double q1 = max_adiabaticity_q(1, 3, 0, 1.0, kQWindow, 801);
    const double q05 = max_adiabaticity_q(1, 3, 0, 0.5, kQWindow, 801);
    v.check(q1 >= 0.1 && q1 <= 10.0, "max Q13(delta=1) " + fmt(q1));
    v.check(q05 > q1, "max Q13(delta=0.5) " + fmt(q05));
    const double g5 = max_eps(0, 3, 5.0, 1.0), g10 = max_eps(0, 3, 10.0, 1.0), g20 = max_eps(0, 3, 20.0, 1.0);
    v.check(g5 > g10 && g10 > g20, "eps3 over g sigma 5,10,20: " + fmt(g5) + " " + fmt(g10) + " " + fmt(g20));
    const double n0 = max_eps(0, 3, 30.0, 1.0), n5 = max_eps(5, 3, 30.0, 1.0), n10 = max_eps(10, 3, 30.0, 1.0);
    v.check(n0 < n5 && n5 < n10, "eps3 over n 0,5,10: " + fmt(n0) + " " + fmt(n5) + " " + fmt(n10));
}

void asymptotics(Verdict& v) {
    double large = 0.0, small = 0.0;
    for (int n : {0, 1, 2}) {
        large = std::max(large, std::abs(angle_asymptotic({n, 1.0, 5.0, AngleMethod::large_delta}) /
                                             mixing_angle(n, 1.0, 5.0) - 1.0));
        small = std::max(small, std::abs(angle_asymptotic({n, 1.0, 0.2, AngleMethod::small_delta}) /
                                             mixing_angle(n, 1.0, 0.2) - 1.0));
    }
    v.check(large <= 0.01, "large delta rel " + fmt(large));
    v.check(small <= 0.03, "small delta rel " + fmt(small));
    const double ratio = mixing_angle(100, 1.0, 1.0) / (4.0 * std::sqrt(100.0 * kPi));
    v.check(ratio >= 0.99 && ratio <= 1.01, "n=100 ratio " + fmt(ratio));
    oracle::Sampler rng(1005);
    double lin = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int n = rng.integer(-1, 20);
        const double delta = rng.uniform(0.0, 4.0), gs = rng.uniform(0.1, 50.0), a = rng.uniform(0.1, 10.0);
        lin = std::max(lin, std::abs(mixing_angle(n, a * gs, delta) / (a * mixing_angle(n, gs, delta)) - 1.0));
    }
    v.check(lin <= 1e-12, "linearity rel " + fmt(lin));
}

void truth_tables(Verdict& v) {
    for (ProtocolKind kind : {ProtocolKind::swap, ProtocolKind::phase, ProtocolKind::cnot}) {
        const auto ideal = run_protocol(kind, Mode::ideal);
        const double err = amplitude_error(ideal);
        v.check(err <= 1e-12, protocol_name(kind) + " ideal amplitude error " + fmt(err));
        const auto dyn = run_protocol(kind, Mode::dynamics);
        v.check(dyn.min_fidelity() >= 0.99, protocol_name(kind) + " dynamics min fidelity " + fmt(dyn.min_fidelity()));
        v.check(dyn.max_leak() <= 1e-3, protocol_name(kind) + " dynamics max leak " + fmt(dyn.max_leak()));
    }
}

void entanglement(Verdict& v) {
    double worst = 0.0;
    for (double phi : {kPi / 2.0, kPi, 2.0 * kPi}) {
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                const double beta1 = 0.25 * i, alpha2 = 0.25 * j;
                const QubitAmplitudes a1{std::sqrt(1.0 - beta1 * beta1), beta1, 0.0};
                const QubitAmplitudes a2{alpha2, std::sqrt(1.0 - alpha2 * alpha2), 0.0};
                const auto r = entangle_atoms(a1, a2, phi);
                const double closed = 1.0 - beta1 * beta1 * alpha2 * alpha2 * std::pow(std::sin(phi), 2);
                worst = std::max(worst, std::abs(r.p_en - closed));
            }
        }
    }
    v.check(worst <= 1e-10, "max |P_en - closed form| " + fmt(worst));
    const auto report = max_entangle(Mode::dynamics);
    const double c = concurrence(postselect_vacuum(report.entries[0].output));
    v.check(c >= 0.995, "dynamics concurrence " + fmt(c));
}

void robustness(Verdict& v) {
    const std::vector<double> sig{-0.05, -0.02, 0.0, 0.02, 0.05};
    const std::vector<double> del{-0.1, 0.0, 0.1};
    const auto rows = fidelity_scan(ProtocolKind::max_entangle, sig, del, {}, 4);
    double wide = 1.0, narrow = 1.0;
    for (const auto& row : rows) {
        wide = std::min(wide, row.fidelity);
        if (std::abs(row.sigma_error) <= 0.02 + 1e-12) narrow = std::min(narrow, row.fidelity);
    }
    v.check(wide >= 0.97, "min fidelity |dsigma|<=5% " + fmt(wide));
    v.check(narrow >= 0.99, "min fidelity |dsigma|<=2% " + fmt(narrow));
    const std::vector<double> zero{0.0}, five{0.05};
    const double delay_only = fidelity_scan(ProtocolKind::max_entangle, zero, five)[0].fidelity;
    const double sigma_only = fidelity_scan(ProtocolKind::max_entangle, five, zero)[0].fidelity;
    v.check(delay_only >= sigma_only, "5% delay only " + fmt(delay_only) + " vs 5% sigma only " + fmt(sigma_only));
}

void effective_model(Verdict& v) {
    const PulseConfig cfg(30.0, 1.0);
    const TauSpan window{-0.25, 0.25};
    const auto m = effective_crossing_model(0);
    const Eigen::Matrix4d b = m.basis();
    const double h = std::sqrt(0.5);
    const auto eff = effective_two_level_evolve(0, cfg, window, h, h, 101);

    SystemState s;
    const auto basis = manifold_basis(2);
    const Eigen::Vector4d start = h * (b.col(0) + b.col(1));
    for (int k = 0; k < 4; ++k) s.set_amplitude(basis.states[static_cast<std::size_t>(k)], start[k]);
    EvolveOptions opt;
    opt.samples = 101;
    const auto full = evolve(s, cfg, window, opt);
    double agree = 0.0, transfer = 0.0;
    for (std::size_t k = 0; k < full.taus.size(); ++k) {
        const auto& amp = full.trajectory[k].block(2)->amplitudes;
        const complex c1 = b.col(0).cast<complex>().dot(amp);
        const complex c2 = b.col(1).cast<complex>().dot(amp);
        const double in_span = std::sqrt(std::norm(c1) + std::norm(c2));
        agree = std::max(agree, std::abs(std::abs(c1) / in_span - std::abs(eff.c1[k])));
        agree = std::max(agree, std::abs(std::abs(c2) / in_span - std::abs(eff.c2[k])));
        transfer = std::max(transfer, std::abs(std::abs(eff.c1[k]) - h));
        transfer = std::max(transfer, std::abs(std::abs(eff.c2[k]) - h));
    }
    v.check(agree <= 1e-3, "max ||c| reduced - |c| full| " + fmt(agree));
    v.check(transfer <= 1e-6, "max c1<->c2 transfer " + fmt(transfer));
    v.check(!eff.outside_validity, "window inside |tau| <= 0.25 delta");
}

const std::vector<std::function<void(Verdict&)>> kCriteria{spectral_oracle, crossing,      transfer,
                                                           diagnostics,     asymptotics,   truth_tables,
                                                           entanglement,    robustness,    effective_model};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty()) {
        for (int k = 1; k <= 9; ++k) which.push_back(k);
    }
    bool all = true;
    for (int k : which) {
        if (k < 1 || k > 9) {
            std::fprintf(stderr, "usage: tavis_acceptance [1-9 ...]\n");
            return 2;
        }
        Verdict v;
        try {
            kCriteria[static_cast<std::size_t>(k - 1)](v);
        } catch (const std::exception& e) {
            v.check(false, std::string("exception: ") + e.what());
        }
        std::printf("criterion %d: %s  %s\n", k, v.pass() ? "PASS" : "FAIL", v.detail().c_str());
        std::fflush(stdout);
        all = all && v.pass();
    }
    return all ? 0 : 1;
}
