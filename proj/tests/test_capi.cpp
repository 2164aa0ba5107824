#include "tavis/tavis.h"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

namespace {

constexpr double kPi = std::numbers::pi;

struct Pulse {
    tvs_pulse* p = nullptr;
    Pulse(double gs, double delta) { REQUIRE(tvs_pulse_create(gs, delta, &p) == TVS_OK); }
    ~Pulse() { tvs_pulse_destroy(p); }
};

std::string take(tvs_text* t) {
    std::string s(tvs_text_data(t), tvs_text_size(t));
    tvs_text_destroy(t);
    return s;
}

}  // namespace

TEST_CASE("status reporting") {
    CHECK(std::string(tvs_status_name(TVS_OK)) == "ok");
    CHECK(std::strlen(tvs_version()) > 0);
    tvs_pulse* p = nullptr;
    CHECK(tvs_pulse_create(-1.0, 1.0, &p) == TVS_ERR_INVALID_ARGUMENT);
    CHECK(p == nullptr);
    CHECK(std::strlen(tvs_last_error()) > 0);
    CHECK(tvs_pulse_create(1.0, 1.0, nullptr) == TVS_ERR_INVALID_ARGUMENT);
    double v = 0.0;
    CHECK(tvs_pulse_params(nullptr, &v, &v) == TVS_ERR_INVALID_ARGUMENT);
    tvs_pulse_destroy(nullptr);
    tvs_state_destroy(nullptr);
    tvs_report_destroy(nullptr);
    tvs_text_destroy(nullptr);
}

TEST_CASE("pulses and spectrum") {
    tvs_pulse* phys = nullptr;
    REQUIRE(tvs_pulse_from_physical(2e5, 500.0, 5e-3, 2e-5, &phys) == TVS_OK);
    double gs = 0.0, delta = 0.0;
    REQUIRE(tvs_pulse_params(phys, &gs, &delta) == TVS_OK);
    CHECK(gs == doctest::Approx(2.0));
    CHECK(delta == doctest::Approx(1.0));
    tvs_pulse_destroy(phys);

    Pulse p(1.0, 1.0);
    double eta = 0.0;
    REQUIRE(tvs_coupling_envelope(p.p, 1, 0.0, &eta) == TVS_OK);
    CHECK(eta == doctest::Approx(std::exp(-1.0)));
    CHECK(tvs_coupling_envelope(p.p, 3, 0.0, &eta) == TVS_ERR_INVALID_ARGUMENT);

    size_t dim = 0;
    REQUIRE(tvs_manifold_dimension(1, &dim) == TVS_OK);
    CHECK(dim == 3);
    std::vector<double> h(16);
    REQUIRE(tvs_hamiltonian(2, 0.0, p.p, h.data(), h.size(), &dim) == TVS_OK);
    CHECK(dim == 4);
    CHECK(h[1] == doctest::Approx(std::exp(-1.0)));
    CHECK(tvs_hamiltonian(3, 0.0, p.p, h.data(), 3, &dim) == TVS_ERR_INVALID_ARGUMENT);

    double e[4];
    REQUIRE(tvs_adiabatic_energies(0, 0.0, p.p, TVS_ORDERING_RAW, e) == TVS_OK);
    CHECK(e[3] == doctest::Approx(std::sqrt(6.0) * std::exp(-1.0)));
    double psi[16];
    double limit[16];
    REQUIRE(tvs_adiabatic_states(0, 0.0, p.p, TVS_ORDERING_RAW, TVS_SIDE_LEFT, limit) == TVS_OK);
    REQUIRE(tvs_degeneracy_states(0, TVS_SIDE_LEFT, psi) == TVS_OK);
    double norm = 0.0, overlap = 0.0;
    for (int k = 0; k < 4; ++k) {
        norm += psi[k] * psi[k];
        overlap += psi[k] * limit[k];
    }
    CHECK(norm == doctest::Approx(1.0));
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-9));

    double q = 0.0;
    REQUIRE(tvs_adiabaticity_q(1, 2, 0, 0.5, 1.0, 0, &q) == TVS_OK);
    CHECK(q == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("states and evolution") {
    tvs_state* s = nullptr;
    REQUIRE(tvs_state_create(&s) == TVS_OK);
    REQUIRE(tvs_state_set(s, 0, 1, 0, 1.0, 0.0) == TVS_OK);
    double n2 = 0.0;
    REQUIRE(tvs_state_norm_squared(s, &n2) == TVS_OK);
    CHECK(n2 == doctest::Approx(1.0));
    CHECK(tvs_state_set(s, -1, 0, 0, 1.0, 0.0) == TVS_ERR_INVALID_ARGUMENT);

    Pulse p(10.0, 1.0);
    double w = 0.0;
    REQUIRE(tvs_default_window(p.p, &w) == TVS_OK);
    CHECK(w == doctest::Approx(7.0));
    tvs_evolve_options opt;
    tvs_evolve_options_default(&opt);
    opt.samples = 21;
    tvs_evolution* ev = nullptr;
    REQUIRE(tvs_evolve(s, p.p, -w, w, &opt, &ev) == TVS_OK);
    CHECK(tvs_evolution_size(ev) == 21);
    double drift = 1.0;
    REQUIRE(tvs_evolution_norm_drift(ev, &drift) == TVS_OK);
    CHECK(drift < 1e-8);
    tvs_state* fin = nullptr;
    REQUIRE(tvs_evolution_final(ev, &fin) == TVS_OK);
    double re = 0.0, im = 0.0, block = 0.0;
    for (int k : {0, 1, 2}) {
        const int photons = k == 0 ? 1 : 0;
        REQUIRE(tvs_state_get(fin, photons, k == 2 ? 1 : 0, k == 1 ? 1 : 0, &re, &im) == TVS_OK);
        block += re * re + im * im;
    }
    CHECK(block == doctest::Approx(1.0).epsilon(1e-8));
    tvs_text* csv = nullptr;
    REQUIRE(tvs_trajectory_csv(ev, -1, 1, &csv) == TVS_ERR_INVALID_ARGUMENT);
    tvs_state_destroy(fin);
    tvs_evolution_destroy(ev);

    opt.max_steps = 3;
    CHECK(tvs_evolve(s, p.p, -w, w, &opt, &ev) == TVS_ERR_INTEGRATION);
    tvs_state_destroy(s);

    tvs_state* frame = nullptr;
    REQUIRE(tvs_state_frame(0, 2, -w, p.p, TVS_ORDERING_CROSSING, &frame) == TVS_OK);
    REQUIRE(tvs_state_inner(frame, frame, &re, &im) == TVS_OK);
    CHECK(re == doctest::Approx(1.0));
    tvs_state_destroy(frame);
}

TEST_CASE("angles") {
    double i = 0.0;
    REQUIRE(tvs_unit_mixing_integral(-1, 1.0, &i) == TVS_OK);
    CHECK(i == doctest::Approx(3.319413).epsilon(1e-6));
    double phi = 0.0;
    CHECK(tvs_angle_asymptotic(0, 1.0, 1.0, TVS_ANGLE_LARGE_DELTA, &phi) == TVS_ERR_OUT_OF_DOMAIN);
    tvs_angle_method m;
    REQUIRE(tvs_angle_method_parse("small_delta", &m) == TVS_OK);
    CHECK(m == TVS_ANGLE_SMALL_DELTA);
    double gs = 0.0, angle = 0.0;
    int mult = -1;
    REQUIRE(tvs_solve_gsigma(2.0 * kPi, -1, 1.0, 0.0, &gs, &mult, &angle) == TVS_OK);
    CHECK(gs == doctest::Approx(kPi / i));
    CHECK(mult == 0);
}

TEST_CASE("gates") {
    size_t dim = 0;
    std::vector<double> u(32);
    REQUIRE(tvs_scattering_map(0, kPi, u.data(), u.size(), &dim) == TVS_OK);
    CHECK(dim == 4);

    tvs_protocol proto;
    REQUIRE(tvs_protocol_parse("cnot", &proto) == TVS_OK);
    CHECK(tvs_protocol_parse("toffoli", &proto) == TVS_ERR_INVALID_ARGUMENT);
    tvs_protocol_settings settings;
    tvs_protocol_settings_default(&settings);
    tvs_report* r = nullptr;
    REQUIRE(tvs_run_protocol(proto, TVS_MODE_IDEAL, &settings, 0.0, 0.0, &r) == TVS_OK);
    CHECK(tvs_report_size(r) == 4);
    double mean = 0.0, minf = 0.0, leak = 1.0;
    REQUIRE(tvs_report_summary(r, &mean, &minf, &leak) == TVS_OK);
    CHECK(minf == doctest::Approx(1.0));
    CHECK(leak < 1e-12);
    tvs_text* json = nullptr;
    REQUIRE(tvs_report_json(r, &json) == TVS_OK);
    CHECK(take(json).find("\"cnot\"") != std::string::npos);
    double f = 0.0, l = 0.0;
    CHECK(tvs_report_entry(r, 99, &f, &l) == TVS_ERR_INVALID_ARGUMENT);
    tvs_report_destroy(r);

    const double ground[3] = {1.0, 0.0, 0.0};
    const double excited[3] = {0.0, 1.0, 0.0};
    double p_en = 0.0, closed = 0.0, c = 0.0;
    REQUIRE(tvs_entangle(excited, ground, kPi / 2.0, &p_en, &closed, &c) == TVS_OK);
    CHECK(p_en == doctest::Approx(closed));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-12);

    const double amps[8] = {0.0, 0.0, 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0), 0.0, 0.0, 0.0};
    REQUIRE(tvs_concurrence(amps, &c) == TVS_OK);
    CHECK(c == doctest::Approx(1.0));

    const double sig[2] = {0.0, 0.01};
    const double del[1] = {0.0};
    double fid[2], leaked[2];
    REQUIRE(tvs_fidelity_scan(TVS_PROTOCOL_SWAP, sig, 2, del, 1, &settings, 2, fid, leaked) == TVS_OK);
    CHECK(fid[0] > 0.99);
    CHECK(fid[1] <= fid[0]);
}

TEST_CASE("CSV emitters") {
    Pulse p(1.0, 1.0);
    tvs_text* t = nullptr;
    REQUIRE(tvs_spectrum_csv(0, p.p, -4.0, 4.0, 9, &t) == TVS_OK);
    const auto spec = take(t);
    CHECK(spec.rfind("# n=0", 0) == 0);
    CHECK(tvs_spectrum_csv(0, p.p, -4.0, 4.0, 0, &t) == TVS_ERR_INVALID_ARGUMENT);

    const char* cols[2] = {"x", "y"};
    const double rows[4] = {1.0, 2.0, 3.0, 4.0};
    REQUIRE(tvs_table_csv(cols, 2, rows, 2, "k=v", &t) == TVS_OK);
    CHECK(take(t) == "# k=v\nx,y\n1,2\n3,4\n");

    const int ns[2] = {0, 1};
    const double ds[1] = {1.0};
    REQUIRE(tvs_angle_table_csv(ns, 2, ds, 1, 1.0, TVS_ANGLE_QUADRATURE, &t) == TVS_OK);
    CHECK(take(t).find("phi_quadrature") != std::string::npos);
}
