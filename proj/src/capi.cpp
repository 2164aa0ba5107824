#include "tavis/tavis.h"

#include "tavis/angle.hpp"
#include "tavis/dynamics.hpp"
#include "tavis/errors.hpp"
#include "tavis/gates.hpp"
#include "tavis/io.hpp"

#include <cmath>
#include <exception>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

struct tvs_pulse {
    tavis::PulseConfig cfg;
};

struct tvs_state {
    tavis::SystemState state;
};

struct tvs_evolution {
    tavis::EvolutionResult result;
};

struct tvs_report {
    tavis::GateReport report;
};

struct tvs_text {
    std::string data;
};

namespace {

thread_local std::string last_error;

tvs_status fail(tvs_status status, const std::string& message) {
    last_error = message;
    return status;
}

// Runs `body`, mapping exceptions onto status codes.
template <class F>
tvs_status guarded(F&& body) {
    try {
        body();
        return TVS_OK;
    } catch (const tavis::DegeneratePointError& e) {
        return fail(TVS_ERR_DEGENERATE, e.what());
    } catch (const tavis::OutOfDomainError& e) {
        return fail(TVS_ERR_OUT_OF_DOMAIN, e.what());
    } catch (const tavis::IntegrationError& e) {
        return fail(TVS_ERR_INTEGRATION, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(TVS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(TVS_ERR_OUT_OF_DOMAIN, e.what());
    } catch (const std::bad_alloc&) {
        return fail(TVS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(TVS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(TVS_ERR_INTERNAL, "unknown error");
    }
}

template <class T>
void require(const T* ptr, const char* name) {
    if (!ptr) throw std::invalid_argument(std::string(name) + " must not be NULL");
}

tavis::FrameOrdering to_ordering(tvs_ordering o) {
    switch (o) {
        case TVS_ORDERING_RAW:
            return tavis::FrameOrdering::raw;
        case TVS_ORDERING_CROSSING:
            return tavis::FrameOrdering::crossing_aware;
    }
    throw std::invalid_argument("unknown frame ordering");
}

tavis::Side to_side(tvs_side s) {
    switch (s) {
        case TVS_SIDE_LEFT:
            return tavis::Side::left;
        case TVS_SIDE_RIGHT:
            return tavis::Side::right;
    }
    throw std::invalid_argument("unknown side");
}

tavis::Mode to_mode(tvs_mode m) {
    switch (m) {
        case TVS_MODE_IDEAL:
            return tavis::Mode::ideal;
        case TVS_MODE_DYNAMICS:
            return tavis::Mode::dynamics;
    }
    throw std::invalid_argument("unknown mode");
}

tavis::AngleMethod to_method(tvs_angle_method m) {
    if (m < TVS_ANGLE_QUADRATURE || m > TVS_ANGLE_LARGE_N) throw std::invalid_argument("unknown angle method");
    return static_cast<tavis::AngleMethod>(m);
}

tavis::ProtocolKind to_protocol(tvs_protocol p) {
    if (p < TVS_PROTOCOL_SWAP || p > TVS_PROTOCOL_MAP_ATOM_TO_CAVITY) throw std::invalid_argument("unknown protocol");
    return static_cast<tavis::ProtocolKind>(p);
}

tavis::Level to_level(int level) {
    if (level != 0 && level != 1) throw std::invalid_argument("atomic level must be 0 or 1");
    return static_cast<tavis::Level>(level);
}

tavis::Atom to_atom(int atom) {
    if (atom != 1 && atom != 2) throw std::invalid_argument("atom must be 1 or 2");
    return static_cast<tavis::Atom>(atom);
}

tavis::EvolveOptions to_options(const tvs_evolve_options* o) {
    tavis::EvolveOptions opts;
    if (o) {
        opts.abs_tol = o->abs_tol;
        opts.rel_tol = o->rel_tol;
        opts.samples = o->samples;
        opts.max_steps = o->max_steps;
    }
    return opts;
}

tavis::ProtocolSettings to_settings(const tvs_protocol_settings* s) {
    tavis::ProtocolSettings out;
    if (s) {
        out.delta = s->delta;
        out.min_g_sigma = s->min_g_sigma;
        if (s->fixed_g_sigma > 0.0) out.fixed_g_sigma = s->fixed_g_sigma;
        out.evolve = to_options(&s->evolve);
    }
    return out;
}

tavis::QubitAmplitudes to_qubit(const double* a) {
    require(a, "atom amplitudes");
    return {a[0], a[1], a[2]};
}

std::vector<double> errors_vector(const double* values, std::size_t count, const char* name) {
    if (count && !values) throw std::invalid_argument(std::string(name) + " must not be NULL");
    return std::vector<double>(values, values + count);
}

tavis::Parameters parse_comment(const char* comment) {
    tavis::Parameters params;
    if (!comment) return params;
    std::istringstream is(comment);
    std::string token;
    while (is >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            params.emplace_back(token, "");
        } else {
            params.emplace_back(token.substr(0, eq), token.substr(eq + 1));
        }
    }
    return params;
}

template <class T>
void give(T** out, T* value) {
    *out = value;
}

}  // namespace

extern "C" {

const char* tvs_last_error(void) { return last_error.c_str(); }

const char* tvs_status_name(tvs_status status) {
    switch (status) {
        case TVS_OK:
            return "ok";
        case TVS_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case TVS_ERR_DEGENERATE:
            return "degenerate point";
        case TVS_ERR_OUT_OF_DOMAIN:
            return "out of domain";
        case TVS_ERR_INTEGRATION:
            return "integration failure";
        case TVS_ERR_IO:
            return "i/o error";
        case TVS_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

const char* tvs_version(void) { return "0.1.0"; }

const char* tvs_text_data(const tvs_text* text) { return text ? text->data.c_str() : ""; }
size_t tvs_text_size(const tvs_text* text) { return text ? text->data.size() : 0; }
void tvs_text_destroy(tvs_text* text) { delete text; }

tvs_status tvs_pulse_create(double g_sigma, double delta, tvs_pulse** out) {
    return guarded([&] {
        require(out, "out");
        tavis::PulseConfig cfg(g_sigma, delta);
        cfg.validate();
        give(out, new tvs_pulse{cfg});
    });
}

tvs_status tvs_pulse_from_physical(double g, double v, double x0, double delta_t, tvs_pulse** out) {
    return guarded([&] {
        require(out, "out");
        auto cfg = tavis::PulseConfig::from_physical(g, v, x0, delta_t);
        cfg.validate();
        give(out, new tvs_pulse{cfg});
    });
}

tvs_status tvs_pulse_params(const tvs_pulse* pulse, double* g_sigma, double* delta) {
    return guarded([&] {
        require(pulse, "pulse");
        if (g_sigma) *g_sigma = pulse->cfg.g_sigma;
        if (delta) *delta = pulse->cfg.delta;
    });
}

void tvs_pulse_destroy(tvs_pulse* pulse) { delete pulse; }

tvs_status tvs_coupling_envelope(const tvs_pulse* pulse, int atom, double tau, double* out) {
    return guarded([&] {
        require(pulse, "pulse");
        require(out, "out");
        *out = tavis::coupling_envelope(to_atom(atom), tau, pulse->cfg);
    });
}

tvs_status tvs_default_window(const tvs_pulse* pulse, double* out) {
    return guarded([&] {
        require(pulse, "pulse");
        require(out, "out");
        *out = tavis::default_window(pulse->cfg);
    });
}

tvs_status tvs_manifold_dimension(int excitations, size_t* out) {
    return guarded([&] {
        require(out, "out");
        *out = tavis::manifold_basis(excitations).dimension();
    });
}

tvs_status tvs_hamiltonian(int excitations, double tau, const tvs_pulse* pulse, double* out, size_t capacity,
                           size_t* dim) {
    return guarded([&] {
        require(pulse, "pulse");
        require(out, "out");
        const auto h = tavis::build_hamiltonian(excitations, tau, pulse->cfg);
        const auto d = static_cast<std::size_t>(h.rows());
        if (capacity < d * d) throw std::invalid_argument("tvs_hamiltonian: output buffer too small");
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) out[i * d + j] = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        if (dim) *dim = d;
    });
}

tvs_status tvs_characteristic_poly(double energy, int n, double tau, const tvs_pulse* pulse, double* out) {
    return guarded([&] {
        require(pulse, "pulse");
        require(out, "out");
        *out = tavis::characteristic_poly(energy, n, tau, pulse->cfg);
    });
}

tvs_status tvs_adiabatic_energies(int n, double tau, const tvs_pulse* pulse, tvs_ordering ordering, double out[4]) {
    return guarded([&] {
        require(pulse, "pulse");
        require(out, "out");
        const auto o = to_ordering(ordering);
        for (int b = 1; b <= 4; ++b) out[b - 1] = tavis::branch_energy(b, n, tau, pulse->cfg, o);
    });
}

tvs_status tvs_adiabatic_states(int n, double tau, const tvs_pulse* pulse, tvs_ordering ordering, tvs_side side,
                                double out[16]) {
    return guarded([&] {
        require(pulse, "pulse");
        require(out, "out");
        const auto frame = tavis::adiabatic_frame(n, tau, pulse->cfg, to_ordering(ordering), to_side(side));
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) out[4 * j + k] = frame.states[static_cast<std::size_t>(j)][k];
        }
    });
}

tvs_status tvs_degeneracy_states(int n, tvs_side side, double out[16]) {
    return guarded([&] {
        require(out, "out");
        const auto d = tavis::degeneracy_states(n, to_side(side));
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) out[4 * j + k] = d.states[static_cast<std::size_t>(j)][k];
        }
    });
}

tvs_status tvs_adiabaticity_q(int i, int j, int n, double tau, double delta, int finite_difference, double* out) {
    return guarded([&] {
        require(out, "out");
        const auto method = finite_difference ? tavis::DerivativeMethod::finite_difference
                                              : tavis::DerivativeMethod::analytic;
        *out = tavis::adiabaticity_q(i, j, n, tau, delta, method);
    });
}

tvs_status tvs_state_create(tvs_state** out) {
    return guarded([&] {
        require(out, "out");
        give(out, new tvs_state{});
    });
}

tvs_status tvs_state_product(const double atom1[3], const double atom2[3], const double* cavity, size_t ncavity,
                             tvs_state** out) {
    return guarded([&] {
        require(out, "out");
        require(cavity, "cavity");
        std::vector<tavis::complex> amps(ncavity);
        for (std::size_t k = 0; k < ncavity; ++k) amps[k] = {cavity[2 * k], cavity[2 * k + 1]};
        give(out, new tvs_state{tavis::decompose_product_state(to_qubit(atom1), to_qubit(atom2), amps)});
    });
}

tvs_status tvs_state_frame(int n, int branch, double tau, const tvs_pulse* pulse, tvs_ordering ordering,
                           tvs_state** out) {
    return guarded([&] {
        require(pulse, "pulse");
        require(out, "out");
        give(out, new tvs_state{tavis::frame_state(n, branch, tau, pulse->cfg, to_ordering(ordering))});
    });
}

tvs_status tvs_state_clone(const tvs_state* state, tvs_state** out) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        give(out, new tvs_state{state->state});
    });
}

tvs_status tvs_state_set(tvs_state* state, int photons, int atom1, int atom2, double re, double im) {
    return guarded([&] {
        require(state, "state");
        if (photons < 0) throw std::invalid_argument("photon number must be >= 0");
        state->state.set_amplitude({photons, to_level(atom1), to_level(atom2)}, {re, im});
    });
}

tvs_status tvs_state_get(const tvs_state* state, int photons, int atom1, int atom2, double* re, double* im) {
    return guarded([&] {
        require(state, "state");
        if (photons < 0) throw std::invalid_argument("photon number must be >= 0");
        const auto a = state->state.amplitude({photons, to_level(atom1), to_level(atom2)});
        if (re) *re = a.real();
        if (im) *im = a.imag();
    });
}

tvs_status tvs_state_norm_squared(const tvs_state* state, double* out) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        *out = state->state.norm_squared();
    });
}

tvs_status tvs_state_normalize(tvs_state* state) {
    return guarded([&] {
        require(state, "state");
        state->state.normalize();
    });
}

tvs_status tvs_state_inner(const tvs_state* a, const tvs_state* b, double* re, double* im) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        const auto v = a->state.inner(b->state);
        if (re) *re = v.real();
        if (im) *im = v.imag();
    });
}

void tvs_state_destroy(tvs_state* state) { delete state; }

void tvs_evolve_options_default(tvs_evolve_options* options) {
    if (!options) return;
    const tavis::EvolveOptions d;
    *options = {d.abs_tol, d.rel_tol, d.samples, d.max_steps};
}

tvs_status tvs_evolve(const tvs_state* initial, const tvs_pulse* pulse, double tau_begin, double tau_end,
                      const tvs_evolve_options* options, tvs_evolution** out) {
    return guarded([&] {
        require(initial, "initial");
        require(pulse, "pulse");
        require(out, "out");
        if (!std::isfinite(tau_begin) || !std::isfinite(tau_end) || tau_begin == tau_end) {
            throw std::invalid_argument("tvs_evolve: need a finite, non-empty tau span");
        }
        auto result = tavis::evolve(initial->state, pulse->cfg, {tau_begin, tau_end}, to_options(options));
        give(out, new tvs_evolution{std::move(result)});
    });
}

size_t tvs_evolution_size(const tvs_evolution* evolution) { return evolution ? evolution->result.taus.size() : 0; }

tvs_status tvs_evolution_tau(const tvs_evolution* evolution, size_t index, double* out) {
    return guarded([&] {
        require(evolution, "evolution");
        require(out, "out");
        *out = evolution->result.taus.at(index);
    });
}

tvs_status tvs_evolution_state(const tvs_evolution* evolution, size_t index, tvs_state** out) {
    return guarded([&] {
        require(evolution, "evolution");
        require(out, "out");
        if (index >= evolution->result.trajectory.size()) throw std::invalid_argument("sample index out of range");
        give(out, new tvs_state{evolution->result.trajectory[index]});
    });
}

tvs_status tvs_evolution_final(const tvs_evolution* evolution, tvs_state** out) {
    return guarded([&] {
        require(evolution, "evolution");
        require(out, "out");
        give(out, new tvs_state{evolution->result.final_state});
    });
}

tvs_status tvs_evolution_norm_drift(const tvs_evolution* evolution, double* out) {
    return guarded([&] {
        require(evolution, "evolution");
        require(out, "out");
        *out = evolution->result.norm_drift;
    });
}

tvs_status tvs_evolution_eps(const tvs_evolution* evolution, int branch, int n, tvs_ordering ordering, double* out,
                             size_t capacity) {
    return guarded([&] {
        require(evolution, "evolution");
        require(out, "out");
        if (capacity < evolution->result.taus.size()) throw std::invalid_argument("tvs_evolution_eps: buffer too small");
        const auto eps = tavis::nonadiabaticity_eps(branch, evolution->result, n, to_ordering(ordering));
        std::copy(eps.begin(), eps.end(), out);
    });
}

void tvs_evolution_destroy(tvs_evolution* evolution) { delete evolution; }

tvs_status tvs_dynamical_phase(int branch, int n, const tvs_pulse* pulse, double tau_begin, double tau_end,
                               double* out) {
    return guarded([&] {
        require(pulse, "pulse");
        require(out, "out");
        *out = tavis::dynamical_phase(branch, n, pulse->cfg, {tau_begin, tau_end});
    });
}

tvs_status tvs_effective_phase(int n, const tvs_pulse* pulse, double tau_begin, double tau_end, double* phase_c1,
                               int* outside_validity) {
    return guarded([&] {
        require(pulse, "pulse");
        require(phase_c1, "phase_c1");
        const double h = std::sqrt(0.5);
        const auto e = tavis::effective_two_level_evolve(n, pulse->cfg, {tau_begin, tau_end}, h, h, 2);
        *phase_c1 = std::arg(e.c1.back());
        if (outside_validity) *outside_validity = e.outside_validity ? 1 : 0;
    });
}

tvs_status tvs_unit_mixing_integral(int n, double delta, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = tavis::unit_mixing_integral(n, delta);
    });
}

tvs_status tvs_mixing_angle(int n, double g_sigma, double delta, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = tavis::mixing_angle(n, g_sigma, delta);
    });
}

tvs_status tvs_angle_asymptotic(int n, double g_sigma, double delta, tvs_angle_method method, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = tavis::angle_asymptotic({n, g_sigma, delta, to_method(method)});
    });
}

tvs_status tvs_angle_method_parse(const char* name, tvs_angle_method* out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        *out = static_cast<tvs_angle_method>(tavis::parse_angle_method(name));
    });
}

tvs_status tvs_solve_gsigma(double target, int n, double delta, double min_g_sigma, double* g_sigma,
                            int* multiplicity, double* angle) {
    return guarded([&] {
        const auto sol = tavis::solve_gsigma_for_angle(target, n, delta, min_g_sigma);
        if (g_sigma) *g_sigma = sol.g_sigma;
        if (multiplicity) *multiplicity = sol.multiplicity;
        if (angle) *angle = sol.angle;
    });
}

void tvs_protocol_settings_default(tvs_protocol_settings* settings) {
    if (!settings) return;
    const tavis::ProtocolSettings d;
    settings->delta = d.delta;
    settings->min_g_sigma = d.min_g_sigma;
    settings->fixed_g_sigma = 0.0;
    tvs_evolve_options_default(&settings->evolve);
}

tvs_status tvs_protocol_parse(const char* name, tvs_protocol* out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        *out = static_cast<tvs_protocol>(tavis::parse_protocol(name));
    });
}

tvs_status tvs_scattering_map(int n, double phi, double* out, size_t capacity, size_t* dim) {
    return guarded([&] {
        require(out, "out");
        const auto map = tavis::scattering_map(n, phi);
        const auto d = static_cast<std::size_t>(map.matrix.rows());
        if (capacity < 2 * d * d) throw std::invalid_argument("tvs_scattering_map: output buffer too small");
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const auto v = map.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                out[2 * (i * d + j)] = v.real();
                out[2 * (i * d + j) + 1] = v.imag();
            }
        }
        if (dim) *dim = d;
    });
}

tvs_status tvs_run_protocol(tvs_protocol protocol, tvs_mode mode, const tvs_protocol_settings* settings,
                            double sigma_error, double delay_error, tvs_report** out) {
    return guarded([&] {
        require(out, "out");
        auto report =
            tavis::run_protocol(to_protocol(protocol), to_mode(mode), to_settings(settings), {sigma_error, delay_error});
        give(out, new tvs_report{std::move(report)});
    });
}

size_t tvs_report_size(const tvs_report* report) { return report ? report->report.entries.size() : 0; }

tvs_status tvs_report_entry(const tvs_report* report, size_t index, double* fidelity, double* leaked) {
    return guarded([&] {
        require(report, "report");
        if (index >= report->report.entries.size()) throw std::invalid_argument("report entry out of range");
        const auto& e = report->report.entries[index];
        if (fidelity) *fidelity = e.fidelity;
        if (leaked) *leaked = e.leaked_probability;
    });
}

tvs_status tvs_report_output(const tvs_report* report, size_t index, tvs_state** out) {
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        if (index >= report->report.entries.size()) throw std::invalid_argument("report entry out of range");
        give(out, new tvs_state{report->report.entries[index].output});
    });
}

tvs_status tvs_report_summary(const tvs_report* report, double* mean_fidelity, double* min_fidelity,
                              double* max_leak) {
    return guarded([&] {
        require(report, "report");
        if (mean_fidelity) *mean_fidelity = report->report.mean_fidelity();
        if (min_fidelity) *min_fidelity = report->report.min_fidelity();
        if (max_leak) *max_leak = report->report.max_leak();
    });
}

tvs_status tvs_report_pass(const tvs_report* report, size_t index, double* g_sigma, double* delta, int* multiplicity,
                           double* phi_minus1) {
    return guarded([&] {
        require(report, "report");
        if (index >= report->report.passes.size()) throw std::invalid_argument("pass index out of range");
        const auto& p = report->report.passes[index];
        if (g_sigma) *g_sigma = p.g_sigma;
        if (delta) *delta = p.delta;
        if (multiplicity) *multiplicity = p.multiplicity;
        if (phi_minus1) *phi_minus1 = p.phi_minus1;
    });
}

tvs_status tvs_report_json(const tvs_report* report, tvs_text** out) {
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        give(out, new tvs_text{tavis::gate_report_json(report->report)});
    });
}

void tvs_report_destroy(tvs_report* report) { delete report; }

tvs_status tvs_entangle(const double atom1[3], const double atom2[3], double phi, double* p_en,
                        double* p_en_closed_form, double* concurrence) {
    return guarded([&] {
        const auto r = tavis::entangle_atoms(to_qubit(atom1), to_qubit(atom2), phi);
        if (p_en) *p_en = r.p_en;
        if (p_en_closed_form) *p_en_closed_form = r.p_en_closed_form;
        if (concurrence) *concurrence = r.concurrence;
    });
}

tvs_status tvs_entangle_pulse(const double atom1[3], const double atom2[3], const tvs_pulse* pulse, tvs_mode mode,
                              double* p_en, double* p_en_closed_form, double* concurrence) {
    return guarded([&] {
        require(pulse, "pulse");
        const auto r = tavis::entangle_atoms(to_qubit(atom1), to_qubit(atom2), {pulse->cfg}, to_mode(mode));
        if (p_en) *p_en = r.p_en;
        if (p_en_closed_form) *p_en_closed_form = r.p_en_closed_form;
        if (concurrence) *concurrence = r.concurrence;
    });
}

tvs_status tvs_concurrence(const double amplitudes[8], double* out) {
    return guarded([&] {
        require(amplitudes, "amplitudes");
        require(out, "out");
        tavis::TwoQubitPureState s;
        for (std::size_t k = 0; k < 4; ++k) s.amplitudes[k] = {amplitudes[2 * k], amplitudes[2 * k + 1]};
        *out = tavis::concurrence(s);
    });
}

tvs_status tvs_fidelity_scan(tvs_protocol protocol, const double* sigma_errors, size_t nsigma,
                             const double* delay_errors, size_t ndelay, const tvs_protocol_settings* settings,
                             unsigned jobs, double* fidelity, double* leaked) {
    return guarded([&] {
        require(fidelity, "fidelity");
        const auto s = errors_vector(sigma_errors, nsigma, "sigma_errors");
        const auto d = errors_vector(delay_errors, ndelay, "delay_errors");
        const auto rows = tavis::fidelity_scan(to_protocol(protocol), s, d, to_settings(settings), jobs);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            fidelity[k] = rows[k].fidelity;
            if (leaked) leaked[k] = rows[k].leaked_probability;
        }
    });
}

tvs_status tvs_spectrum_csv(int n, const tvs_pulse* pulse, double tau_begin, double tau_end, size_t samples,
                            tvs_text** out) {
    return guarded([&] {
        require(pulse, "pulse");
        require(out, "out");
        if (samples < 2 || !(tau_end > tau_begin)) {
            throw std::invalid_argument("spectrum grid needs tau_end > tau_begin and at least two samples");
        }
        std::vector<double> taus(samples);
        for (std::size_t k = 0; k < samples; ++k) {
            taus[k] = tau_begin + (tau_end - tau_begin) * static_cast<double>(k) / static_cast<double>(samples - 1);
        }
        give(out, new tvs_text{tavis::spectrum_csv(n, pulse->cfg, taus)});
    });
}

tvs_status tvs_trajectory_csv(const tvs_evolution* evolution, int n, int tracked_branch, tvs_text** out) {
    return guarded([&] {
        require(evolution, "evolution");
        require(out, "out");
        give(out, new tvs_text{tavis::trajectory_csv(evolution->result, n, tracked_branch)});
    });
}

tvs_status tvs_angle_table_csv(const int* ns, size_t nn, const double* deltas, size_t nd, double g_sigma,
                               tvs_angle_method method, tvs_text** out) {
    return guarded([&] {
        require(out, "out");
        if (!nn || !nd || !ns || !deltas) throw std::invalid_argument("angle table needs at least one n and one delta");
        const auto m = to_method(method);
        std::vector<tavis::AngleTableRow> rows;
        for (std::size_t i = 0; i < nn; ++i) {
            for (std::size_t j = 0; j < nd; ++j) rows.push_back(tavis::angle_table_row(ns[i], g_sigma, deltas[j], m));
        }
        const tavis::Parameters params{{"g_sigma", tavis::format_double(g_sigma)}, {"method", tavis::method_name(m)}};
        give(out, new tvs_text{tavis::angle_table_csv(rows, params)});
    });
}

tvs_status tvs_scan_csv(tvs_protocol protocol, const double* sigma_errors, size_t nsigma, const double* delay_errors,
                        size_t ndelay, const tvs_protocol_settings* settings, unsigned jobs, tvs_text** out) {
    return guarded([&] {
        require(out, "out");
        const auto kind = to_protocol(protocol);
        const auto cfg = to_settings(settings);
        const auto s = errors_vector(sigma_errors, nsigma, "sigma_errors");
        const auto d = errors_vector(delay_errors, ndelay, "delay_errors");
        const auto rows = tavis::fidelity_scan(kind, s, d, cfg, jobs);
        tavis::Parameters params{{"protocol", tavis::protocol_name(kind)},
                                 {"delta", tavis::format_double(cfg.delta)},
                                 {"min_g_sigma", tavis::format_double(cfg.min_g_sigma)}};
        if (cfg.fixed_g_sigma) params.emplace_back("g_sigma", tavis::format_double(*cfg.fixed_g_sigma));
        give(out, new tvs_text{tavis::scan_csv(rows, params)});
    });
}

tvs_status tvs_table_csv(const char* const* columns, size_t ncols, const double* rows, size_t nrows,
                         const char* comment, tvs_text** out) {
    return guarded([&] {
        require(out, "out");
        if (!columns || ncols == 0) throw std::invalid_argument("table needs at least one column");
        if (nrows && !rows) throw std::invalid_argument("rows must not be NULL");
        std::vector<std::string> cols;
        for (std::size_t c = 0; c < ncols; ++c) {
            require(columns[c], "column name");
            cols.emplace_back(columns[c]);
        }
        std::vector<std::vector<double>> table(nrows);
        for (std::size_t r = 0; r < nrows; ++r) table[r].assign(rows + r * ncols, rows + (r + 1) * ncols);
        give(out, new tvs_text{tavis::table_csv(cols, table, parse_comment(comment))});
    });
}

}  // extern "C"
