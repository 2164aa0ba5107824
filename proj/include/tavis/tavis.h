/* tavis.h: C interface to the two-atom cavity simulator.
 *
 * All functions return a tvs_status. On failure tvs_last_error() returns a
 * message for the calling thread; it stays valid until the next failing call
 * on that thread. Objects are opaque and owned by the caller once created;
 * release them with the matching *_destroy function (NULL is accepted).
 *
 * Conventions: time is tau = t / (2 sigma), energies are in units of g, atoms
 * are 1 and 2, levels are 0 (ground) and 1 (excited). State vectors of a
 * manifold use the order |n,e1e2>, |n+1,g1e2>, |n+1,e1g2>, |n+2,g1g2>.
 */
#ifndef TAVIS_TAVIS_H
#define TAVIS_TAVIS_H

#include <stddef.h>

#if defined(_WIN32)
#define TVS_API __declspec(dllexport)
#else
#define TVS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tvs_status {
    TVS_OK = 0,
    TVS_ERR_INVALID_ARGUMENT = 1,
    TVS_ERR_DEGENERATE = 2,
    TVS_ERR_OUT_OF_DOMAIN = 3,
    TVS_ERR_INTEGRATION = 4,
    TVS_ERR_IO = 5,
    TVS_ERR_INTERNAL = 6
} tvs_status;

typedef enum tvs_ordering { TVS_ORDERING_RAW = 0, TVS_ORDERING_CROSSING = 1 } tvs_ordering;
typedef enum tvs_side { TVS_SIDE_LEFT = 0, TVS_SIDE_RIGHT = 1 } tvs_side;
typedef enum tvs_mode { TVS_MODE_IDEAL = 0, TVS_MODE_DYNAMICS = 1 } tvs_mode;
typedef enum tvs_angle_method {
    TVS_ANGLE_QUADRATURE = 0,
    TVS_ANGLE_LARGE_DELTA = 1,
    TVS_ANGLE_SMALL_DELTA = 2,
    TVS_ANGLE_LARGE_N = 3
} tvs_angle_method;
typedef enum tvs_protocol {
    TVS_PROTOCOL_SWAP = 0,
    TVS_PROTOCOL_PHASE = 1,
    TVS_PROTOCOL_CNOT = 2,
    TVS_PROTOCOL_ENTANGLE = 3,
    TVS_PROTOCOL_MAP_ATOM_TO_ATOM = 4,
    TVS_PROTOCOL_MAP_CAVITY_TO_ATOM = 5,
    TVS_PROTOCOL_MAP_ATOM_TO_CAVITY = 6
} tvs_protocol;

typedef struct tvs_pulse tvs_pulse;
typedef struct tvs_state tvs_state;
typedef struct tvs_evolution tvs_evolution;
typedef struct tvs_report tvs_report;
typedef struct tvs_text tvs_text;

TVS_API const char* tvs_last_error(void);
TVS_API const char* tvs_status_name(tvs_status status);
TVS_API const char* tvs_version(void);

/* text buffers */
TVS_API const char* tvs_text_data(const tvs_text* text);
TVS_API size_t tvs_text_size(const tvs_text* text);
TVS_API void tvs_text_destroy(tvs_text* text);

/* pulses */
TVS_API tvs_status tvs_pulse_create(double g_sigma, double delta, tvs_pulse** out);
TVS_API tvs_status tvs_pulse_from_physical(double g, double v, double x0, double delta_t, tvs_pulse** out);
TVS_API tvs_status tvs_pulse_params(const tvs_pulse* pulse, double* g_sigma, double* delta);
TVS_API void tvs_pulse_destroy(tvs_pulse* pulse);
TVS_API tvs_status tvs_coupling_envelope(const tvs_pulse* pulse, int atom, double tau, double* out);
/* default integration window half-width, delta + 6 */
TVS_API tvs_status tvs_default_window(const tvs_pulse* pulse, double* out);

/* spectrum; `excitations` is N, `n` is the photon index N - 2 */
TVS_API tvs_status tvs_manifold_dimension(int excitations, size_t* out);
/* row-major dim x dim into out (capacity in doubles) */
TVS_API tvs_status tvs_hamiltonian(int excitations, double tau, const tvs_pulse* pulse, double* out,
                                   size_t capacity, size_t* dim);
TVS_API tvs_status tvs_characteristic_poly(double energy, int n, double tau, const tvs_pulse* pulse, double* out);
TVS_API tvs_status tvs_adiabatic_energies(int n, double tau, const tvs_pulse* pulse, tvs_ordering ordering,
                                          double out[4]);
/* out[4 * j + k] = component k of state j + 1 */
TVS_API tvs_status tvs_adiabatic_states(int n, double tau, const tvs_pulse* pulse, tvs_ordering ordering,
                                        tvs_side side, double out[16]);
TVS_API tvs_status tvs_degeneracy_states(int n, tvs_side side, double out[16]);
TVS_API tvs_status tvs_adiabaticity_q(int i, int j, int n, double tau, double delta, int finite_difference,
                                      double* out);

/* states */
TVS_API tvs_status tvs_state_create(tvs_state** out);
/* atom[] = {alpha, beta, theta}; cavity holds ncavity (re, im) pairs */
TVS_API tvs_status tvs_state_product(const double atom1[3], const double atom2[3], const double* cavity,
                                     size_t ncavity, tvs_state** out);
TVS_API tvs_status tvs_state_frame(int n, int branch, double tau, const tvs_pulse* pulse, tvs_ordering ordering,
                                   tvs_state** out);
TVS_API tvs_status tvs_state_clone(const tvs_state* state, tvs_state** out);
TVS_API tvs_status tvs_state_set(tvs_state* state, int photons, int atom1, int atom2, double re, double im);
TVS_API tvs_status tvs_state_get(const tvs_state* state, int photons, int atom1, int atom2, double* re, double* im);
TVS_API tvs_status tvs_state_norm_squared(const tvs_state* state, double* out);
TVS_API tvs_status tvs_state_normalize(tvs_state* state);
/* <a|b> */
TVS_API tvs_status tvs_state_inner(const tvs_state* a, const tvs_state* b, double* re, double* im);
TVS_API void tvs_state_destroy(tvs_state* state);

/* evolution */
typedef struct tvs_evolve_options {
    double abs_tol;
    double rel_tol;
    size_t samples;
    size_t max_steps;
} tvs_evolve_options;

TVS_API void tvs_evolve_options_default(tvs_evolve_options* options);
/* options may be NULL for the defaults */
TVS_API tvs_status tvs_evolve(const tvs_state* initial, const tvs_pulse* pulse, double tau_begin, double tau_end,
                              const tvs_evolve_options* options, tvs_evolution** out);
TVS_API size_t tvs_evolution_size(const tvs_evolution* evolution);
TVS_API tvs_status tvs_evolution_tau(const tvs_evolution* evolution, size_t index, double* out);
TVS_API tvs_status tvs_evolution_state(const tvs_evolution* evolution, size_t index, tvs_state** out);
TVS_API tvs_status tvs_evolution_final(const tvs_evolution* evolution, tvs_state** out);
TVS_API tvs_status tvs_evolution_norm_drift(const tvs_evolution* evolution, double* out);
/* |1 - |<Psi_branch|psi>|^2| per sample; capacity must cover tvs_evolution_size */
TVS_API tvs_status tvs_evolution_eps(const tvs_evolution* evolution, int branch, int n, tvs_ordering ordering,
                                     double* out, size_t capacity);
TVS_API void tvs_evolution_destroy(tvs_evolution* evolution);
TVS_API tvs_status tvs_dynamical_phase(int branch, int n, const tvs_pulse* pulse, double tau_begin, double tau_end,
                                       double* out);
/* reduced model: phases of c1, c2 over a window, with c(begin) = (1, 1) / sqrt2 */
TVS_API tvs_status tvs_effective_phase(int n, const tvs_pulse* pulse, double tau_begin, double tau_end,
                                       double* phase_c1, int* outside_validity);

/* mixing angle */
TVS_API tvs_status tvs_unit_mixing_integral(int n, double delta, double* out);
TVS_API tvs_status tvs_mixing_angle(int n, double g_sigma, double delta, double* out);
TVS_API tvs_status tvs_angle_asymptotic(int n, double g_sigma, double delta, tvs_angle_method method, double* out);
TVS_API tvs_status tvs_angle_method_parse(const char* name, tvs_angle_method* out);
TVS_API tvs_status tvs_solve_gsigma(double target, int n, double delta, double min_g_sigma, double* g_sigma,
                                    int* multiplicity, double* angle);

/* gates */
typedef struct tvs_protocol_settings {
    double delta;
    double min_g_sigma;
    double fixed_g_sigma; /* <= 0: solve from the angle */
    tvs_evolve_options evolve;
} tvs_protocol_settings;

TVS_API void tvs_protocol_settings_default(tvs_protocol_settings* settings);
TVS_API tvs_status tvs_protocol_parse(const char* name, tvs_protocol* out);
/* out holds 2 * dim * dim doubles, (re, im) row-major */
TVS_API tvs_status tvs_scattering_map(int n, double phi, double* out, size_t capacity, size_t* dim);
TVS_API tvs_status tvs_run_protocol(tvs_protocol protocol, tvs_mode mode, const tvs_protocol_settings* settings,
                                    double sigma_error, double delay_error, tvs_report** out);
TVS_API size_t tvs_report_size(const tvs_report* report);
TVS_API tvs_status tvs_report_entry(const tvs_report* report, size_t index, double* fidelity, double* leaked);
TVS_API tvs_status tvs_report_output(const tvs_report* report, size_t index, tvs_state** out);
TVS_API tvs_status tvs_report_summary(const tvs_report* report, double* mean_fidelity, double* min_fidelity,
                                      double* max_leak);
TVS_API tvs_status tvs_report_pass(const tvs_report* report, size_t index, double* g_sigma, double* delta,
                                   int* multiplicity, double* phi_minus1);
TVS_API tvs_status tvs_report_json(const tvs_report* report, tvs_text** out);
TVS_API void tvs_report_destroy(tvs_report* report);

/* one passage with the cavity empty at angle phi (ideal map) */
TVS_API tvs_status tvs_entangle(const double atom1[3], const double atom2[3], double phi, double* p_en,
                                double* p_en_closed_form, double* concurrence);
/* same with a pulse, ideal or dynamics */
TVS_API tvs_status tvs_entangle_pulse(const double atom1[3], const double atom2[3], const tvs_pulse* pulse,
                                      tvs_mode mode, double* p_en, double* p_en_closed_form, double* concurrence);
/* amplitudes (re, im) over g1g2, g1e2, e1g2, e1e2 */
TVS_API tvs_status tvs_concurrence(const double amplitudes[8], double* out);

/* fidelity and leak per grid point, sigma major: out[i * ndelay + j] */
TVS_API tvs_status tvs_fidelity_scan(tvs_protocol protocol, const double* sigma_errors, size_t nsigma,
                                     const double* delay_errors, size_t ndelay, const tvs_protocol_settings* settings,
                                     unsigned jobs, double* fidelity, double* leaked);

/* CSV emitters */
TVS_API tvs_status tvs_spectrum_csv(int n, const tvs_pulse* pulse, double tau_begin, double tau_end, size_t samples,
                                    tvs_text** out);
TVS_API tvs_status tvs_trajectory_csv(const tvs_evolution* evolution, int n, int tracked_branch, tvs_text** out);
TVS_API tvs_status tvs_angle_table_csv(const int* ns, size_t nn, const double* deltas, size_t nd, double g_sigma,
                                       tvs_angle_method method, tvs_text** out);
TVS_API tvs_status tvs_scan_csv(tvs_protocol protocol, const double* sigma_errors, size_t nsigma,
                                const double* delay_errors, size_t ndelay, const tvs_protocol_settings* settings,
                                unsigned jobs, tvs_text** out);
/* columns[ncols] names, rows row-major nrows x ncols; comment holds "key=value ..." or NULL */
TVS_API tvs_status tvs_table_csv(const char* const* columns, size_t ncols, const double* rows, size_t nrows,
                                 const char* comment, tvs_text** out);

#ifdef __cplusplus
}
#endif

#endif /* TAVIS_TAVIS_H */
