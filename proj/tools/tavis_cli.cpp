// tavis: command-line front end over the C API.
//
//   tavis spectrum [--preset fig1|fig3] ...
//   tavis evolve   [--preset fig2|fig4|fig5|fig7] ...
//   tavis angle    ...
//   tavis gate     <protocol> [--mode ideal|dynamics] [--scan]
//   tavis scan     [--preset fig6] ...
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure.

#include "tavis/tavis.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CliError {
    int code;
    std::string message;
};

void check(tvs_status status) {
    if (status == TVS_OK) return;
    const int code = status == TVS_ERR_INVALID_ARGUMENT ? kExitUsage : kExitNumerical;
    throw CliError{code, std::string(tvs_status_name(status)) + ": " + tvs_last_error()};
}

void usage_error(const std::string& message) { throw CliError{kExitUsage, message}; }

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};
using Pulse = std::unique_ptr<tvs_pulse, Deleter<tvs_pulse, tvs_pulse_destroy>>;
using State = std::unique_ptr<tvs_state, Deleter<tvs_state, tvs_state_destroy>>;
using Evolution = std::unique_ptr<tvs_evolution, Deleter<tvs_evolution, tvs_evolution_destroy>>;
using Report = std::unique_ptr<tvs_report, Deleter<tvs_report, tvs_report_destroy>>;
using Text = std::unique_ptr<tvs_text, Deleter<tvs_text, tvs_text_destroy>>;

Pulse make_pulse(double g_sigma, double delta) {
    tvs_pulse* p = nullptr;
    check(tvs_pulse_create(g_sigma, delta, &p));
    return Pulse(p);
}

std::string take(tvs_text* raw) {
    Text t(raw);
    return tvs_text_data(t.get());
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os) throw CliError{kExitNumerical, "cannot write " + path};
    os << content;
    if (!content.empty() && content.back() != '\n') os << '\n';
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string table(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                  const std::string& comment) {
    std::vector<const char*> names;
    for (const auto& c : columns) names.push_back(c.c_str());
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    tvs_text* out = nullptr;
    check(tvs_table_csv(names.data(), names.size(), flat.data(), rows.size(), comment.c_str(), &out));
    return take(out);
}

// Runs body(k) for k in [0, count) on up to `jobs` threads; the first failure wins.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mutex;
    auto worker = [&] {
        try {
            for (std::size_t k = next++; k < count; k = next++) body(k);
        } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
            next = count;
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);
}

// Fills options not given on the command line from a key=value file.
void apply_config(CLI::App* app, const std::string& path) {
    if (path.empty()) return;
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_file(path);
    } catch (const CLI::FileError& e) {
        usage_error(std::string("config: ") + e.what());
    }
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;
        if (!item.parents.empty()) usage_error("config: sections are not supported (" + item.fullname() + ")");
        auto* opt = app->get_option_no_throw("--" + item.name);
        if (opt == nullptr || item.name == "config") usage_error("config: unknown key " + item.name);
        if (opt->count() > 0) continue;
        try {
            opt->add_result(item.inputs);
            opt->run_callback();
        } catch (const CLI::ParseError& e) {
            usage_error("config: " + item.name + ": " + e.what());
        }
    }
}

// Applies preset values to options the user did not set explicitly.
template <class T>
void preset(CLI::App* app, const std::string& name, T& target, const T& value) {
    if (app->get_option(name)->count() == 0) target = value;
}

struct Common {
    std::string out;
    std::string json;
    std::string config;
    std::string preset;
    unsigned jobs{1};
    double abs_tol{1e-12};
    double rel_tol{1e-12};
};

void add_common(CLI::App* app, Common& c, bool with_tolerances) {
    app->add_option("--config", c.config, "flat key=value parameter file");
    app->add_option("--out,-o", c.out, "output file (default stdout)");
    app->add_option("--preset", c.preset, "figure preset");
    app->add_option("--jobs,-j", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    if (with_tolerances) {
        app->add_option("--abs-tol", c.abs_tol, "integrator absolute tolerance")->check(CLI::PositiveNumber);
        app->add_option("--rel-tol", c.rel_tol, "integrator relative tolerance")->check(CLI::PositiveNumber);
    }
}

tvs_evolve_options evolve_options(const Common& c, std::size_t samples) {
    tvs_evolve_options o;
    tvs_evolve_options_default(&o);
    o.abs_tol = c.abs_tol;
    o.rel_tol = c.rel_tol;
    o.samples = samples;
    return o;
}

// spectrum -------------------------------------------------------------------

struct SpectrumArgs {
    Common common;
    int n{0};
    double delta{1.0};
    double tau_min{-4.0};
    double tau_max{4.0};
    std::size_t samples{401};
    std::vector<int> q_pair;
    std::vector<double> deltas;
};

void run_spectrum(CLI::App* app, SpectrumArgs& a) {
    if (!a.common.preset.empty()) {
        if (a.common.preset == "fig1") {
            preset(app, "--n", a.n, 0);
            preset(app, "--delta", a.delta, 1.0);
        } else if (a.common.preset == "fig3") {
            preset(app, "--n", a.n, 0);
            preset(app, "--q-pair", a.q_pair, std::vector<int>{1, 3});
            preset(app, "--deltas", a.deltas, std::vector<double>{0.5, 1.0, 1.25});
            preset(app, "--samples", a.samples, std::size_t{801});
        } else {
            usage_error("spectrum: unknown preset " + a.common.preset + " (fig1, fig3)");
        }
    }
    if (a.samples < 2 || !(a.tau_max > a.tau_min)) usage_error("spectrum: need tau-max > tau-min and samples >= 2");

    if (a.q_pair.empty()) {
        auto pulse = make_pulse(1.0, a.delta);
        tvs_text* out = nullptr;
        check(tvs_spectrum_csv(a.n, pulse.get(), a.tau_min, a.tau_max, a.samples, &out));
        emit(a.common.out, take(out));
        return;
    }
    if (a.q_pair.size() != 2) usage_error("spectrum: --q-pair takes two branch indices");
    if (a.deltas.empty()) a.deltas = {a.delta};
    std::vector<std::string> cols{"tau"};
    for (double d : a.deltas) cols.push_back("Q" + std::to_string(a.q_pair[0]) + std::to_string(a.q_pair[1]) + "_d" + num(d));
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < a.samples; ++k) {
        const double tau = a.tau_min + (a.tau_max - a.tau_min) * static_cast<double>(k) / static_cast<double>(a.samples - 1);
        std::vector<double> row{tau};
        for (double d : a.deltas) {
            double q = std::nan("");
            const auto status = tvs_adiabaticity_q(a.q_pair[0], a.q_pair[1], a.n, tau, d, 0, &q);
            if (status != TVS_ERR_DEGENERATE) check(status);
            row.push_back(q);
        }
        rows.push_back(std::move(row));
    }
    const std::string comment = "n=" + std::to_string(a.n) + " pair=" + std::to_string(a.q_pair[0]) + "," +
                                std::to_string(a.q_pair[1]) + " samples=" + std::to_string(a.samples);
    emit(a.common.out, table(cols, rows, comment));
}

// evolve ---------------------------------------------------------------------

struct EvolveArgs {
    Common common;
    int n{0};
    double g_sigma{30.0};
    double delta{1.0};
    int branch{1};
    std::string ordering{"crossing"};
    double tau0{-1.0};  // <= 0: delta + 6
    std::size_t samples{2001};
    std::vector<int> ns;
    std::vector<double> g_sigmas;
    bool final_only{false};
};

struct RunOutcome {
    Evolution evolution;
    std::vector<double> eps;
};

RunOutcome run_one(const EvolveArgs& a, int n, double g_sigma, tvs_ordering ordering) {
    auto pulse = make_pulse(g_sigma, a.delta);
    double tau0 = a.tau0;
    if (!(tau0 > 0.0)) check(tvs_default_window(pulse.get(), &tau0));
    tvs_state* raw = nullptr;
    check(tvs_state_frame(n, a.branch, -tau0, pulse.get(), ordering, &raw));
    State initial(raw);
    const auto opts = evolve_options(a.common, a.samples);
    tvs_evolution* ev = nullptr;
    check(tvs_evolve(initial.get(), pulse.get(), -tau0, tau0, &opts, &ev));
    RunOutcome out{Evolution(ev), std::vector<double>(a.samples)};
    check(tvs_evolution_eps(out.evolution.get(), a.branch, n, ordering, out.eps.data(), out.eps.size()));
    return out;
}

nlohmann::json evolve_summary(const EvolveArgs& a, const RunOutcome& run, tvs_ordering ordering) {
    const auto* ev = run.evolution.get();
    auto pulse = make_pulse(a.g_sigma, a.delta);
    const std::size_t size = tvs_evolution_size(ev);
    double tau_end = 0.0, tau_begin = 0.0, drift = 0.0;
    check(tvs_evolution_tau(ev, 0, &tau_begin));
    check(tvs_evolution_tau(ev, size - 1, &tau_end));
    check(tvs_evolution_norm_drift(ev, &drift));

    double min_overlap = 1.0;
    for (double e : run.eps) min_overlap = std::min(min_overlap, 1.0 - e);

    tvs_state* raw = nullptr;
    check(tvs_evolution_final(ev, &raw));
    State final_state(raw);
    check(tvs_state_frame(a.n, a.branch, tau_end, pulse.get(), ordering, &raw));
    State tracked(raw);
    double re = 0.0, im = 0.0;
    check(tvs_state_inner(tracked.get(), final_state.get(), &re, &im));

    nlohmann::json raw_overlaps = nlohmann::json::array();
    for (int b = 1; b <= 4; ++b) {
        check(tvs_state_frame(a.n, b, tau_end, pulse.get(), TVS_ORDERING_RAW, &raw));
        State s(raw);
        double r = 0.0, i = 0.0;
        check(tvs_state_inner(s.get(), final_state.get(), &r, &i));
        raw_overlaps.push_back(r * r + i * i);
    }
    double phase = 0.0;
    check(tvs_dynamical_phase(a.branch, a.n, pulse.get(), tau_begin, tau_end, &phase));

    return {{"n", a.n},
            {"g_sigma", a.g_sigma},
            {"delta", a.delta},
            {"branch", a.branch},
            {"ordering", a.ordering},
            {"tau_begin", tau_begin},
            {"tau_end", tau_end},
            {"samples", size},
            {"min_overlap", min_overlap},
            {"final_eps", run.eps.back()},
            {"final_projection", {re, im}},
            {"final_overlap_raw", raw_overlaps},
            {"dynamical_phase", phase},
            {"norm_drift", drift}};
}

void run_evolve(CLI::App* app, EvolveArgs& a) {
    if (!a.common.preset.empty()) {
        const auto& p = a.common.preset;
        if (p == "fig2") {
            preset(app, "--n", a.n, 0);
            preset(app, "--delta", a.delta, 1.0);
            preset(app, "--g-sigma", a.g_sigma, 30.0);
            preset(app, "--branch", a.branch, 1);
        } else if (p == "fig4") {
            preset(app, "--delta", a.delta, 1.0);
            preset(app, "--branch", a.branch, 3);
            preset(app, "--ns", a.ns, std::vector<int>{0});
            preset(app, "--g-sigmas", a.g_sigmas, std::vector<double>{5.0, 10.0, 20.0});
        } else if (p == "fig5") {
            preset(app, "--delta", a.delta, 1.0);
            preset(app, "--branch", a.branch, 3);
            preset(app, "--ns", a.ns, std::vector<int>{0, 5, 10});
            preset(app, "--g-sigmas", a.g_sigmas, std::vector<double>{30.0});
        } else if (p == "fig7") {
            std::vector<int> ns(31);
            for (int k = 0; k <= 30; ++k) ns[static_cast<std::size_t>(k)] = k;
            preset(app, "--delta", a.delta, 1.2);
            preset(app, "--branch", a.branch, 3);
            preset(app, "--ns", a.ns, ns);
            preset(app, "--g-sigmas", a.g_sigmas, std::vector<double>{10.0, 20.0, 30.0, 50.0});
            if (app->get_option("--final-only")->count() == 0) a.final_only = true;
            preset(app, "--samples", a.samples, std::size_t{2});
        } else {
            usage_error("evolve: unknown preset " + p + " (fig2, fig4, fig5, fig7)");
        }
    }
    if (a.ordering != "crossing" && a.ordering != "raw") usage_error("evolve: --ordering must be crossing or raw");
    if (a.samples < 2) usage_error("evolve: --samples must be >= 2");
    const auto ordering = a.ordering == "raw" ? TVS_ORDERING_RAW : TVS_ORDERING_CROSSING;
    if (a.ns.empty()) a.ns = {a.n};
    if (a.g_sigmas.empty()) a.g_sigmas = {a.g_sigma};

    if (a.ns.size() == 1 && a.g_sigmas.size() == 1 && !a.final_only) {
        a.n = a.ns[0];
        a.g_sigma = a.g_sigmas[0];
        const auto run = run_one(a, a.n, a.g_sigma, ordering);
        tvs_text* out = nullptr;
        check(tvs_trajectory_csv(run.evolution.get(), a.n, a.branch, &out));
        emit(a.common.out, take(out));
        const auto summary = evolve_summary(a, run, ordering).dump(2);
        if (!a.common.json.empty()) {
            emit(a.common.json, summary);
        } else if (!a.common.out.empty() && a.common.out != "-") {
            std::cout << summary << '\n';
        }
        return;
    }

    // sweep: one job per (n, g sigma)
    struct Job {
        int n;
        double g_sigma;
        std::vector<double> taus;
        std::vector<double> eps;
    };
    std::vector<Job> jobs;
    for (int n : a.ns) {
        for (double gs : a.g_sigmas) jobs.push_back({n, gs, {}, {}});
    }
    parallel_for(jobs.size(), a.common.jobs, [&](std::size_t k) {
        auto& job = jobs[k];
        auto run = run_one(a, job.n, job.g_sigma, ordering);
        job.eps = std::move(run.eps);
        job.taus.resize(job.eps.size());
        for (std::size_t i = 0; i < job.taus.size(); ++i) check(tvs_evolution_tau(run.evolution.get(), i, &job.taus[i]));
    });

    const std::string eps_name = "eps" + std::to_string(a.branch);
    std::string comment = "delta=" + num(a.delta) + " branch=" + std::to_string(a.branch) + " ordering=" + a.ordering;
    std::vector<std::string> cols;
    std::vector<std::vector<double>> rows;
    if (a.final_only) {
        cols.push_back("n");
        for (double gs : a.g_sigmas) cols.push_back(eps_name + "_gs" + num(gs));
        for (std::size_t i = 0; i < a.ns.size(); ++i) {
            std::vector<double> row{static_cast<double>(a.ns[i])};
            for (std::size_t j = 0; j < a.g_sigmas.size(); ++j) row.push_back(jobs[i * a.g_sigmas.size() + j].eps.back());
            rows.push_back(std::move(row));
        }
        comment += " final_only=1";
    } else {
        cols.push_back("tau");
        for (const auto& job : jobs) cols.push_back(eps_name + "_n" + std::to_string(job.n) + "_gs" + num(job.g_sigma));
        for (std::size_t k = 0; k < a.samples; ++k) {
            std::vector<double> row{jobs.front().taus[k]};
            for (const auto& job : jobs) row.push_back(job.eps[k]);
            rows.push_back(std::move(row));
        }
    }
    emit(a.common.out, table(cols, rows, comment));
}

// angle ----------------------------------------------------------------------

struct AngleArgs {
    Common common;
    std::vector<int> ns{0};
    std::vector<double> deltas;
    double delta_min{0.0};
    double delta_max{5.0};
    std::size_t delta_steps{51};
    double g_sigma{1.0};
    std::string method{"quadrature"};
    double solve{0.0};
    double min_g_sigma{0.0};
};

void run_angle(CLI::App*, AngleArgs& a) {
    if (!a.common.preset.empty()) usage_error("angle: no presets");
    tvs_angle_method method{};
    if (tvs_angle_method_parse(a.method.c_str(), &method) != TVS_OK) usage_error("angle: " + std::string(tvs_last_error()));
    if (a.solve > 0.0) {
        nlohmann::json rows = nlohmann::json::array();
        for (int n : a.ns) {
            for (double d : a.deltas.empty() ? std::vector<double>{1.0} : a.deltas) {
                double gs = 0.0, angle = 0.0;
                int k = 0;
                check(tvs_solve_gsigma(a.solve, n, d, a.min_g_sigma, &gs, &k, &angle));
                rows.push_back({{"n", n}, {"delta", d}, {"target", a.solve}, {"g_sigma", gs}, {"multiplicity", k}, {"angle", angle}});
            }
        }
        emit(a.common.out, rows.dump(2));
        return;
    }
    if (a.deltas.empty()) {
        if (a.delta_steps < 1 || a.delta_max < a.delta_min) usage_error("angle: bad delta range");
        for (std::size_t k = 0; k < a.delta_steps; ++k) {
            const double t = a.delta_steps == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(a.delta_steps - 1);
            a.deltas.push_back(a.delta_min + (a.delta_max - a.delta_min) * t);
        }
    }
    tvs_text* out = nullptr;
    check(tvs_angle_table_csv(a.ns.data(), a.ns.size(), a.deltas.data(), a.deltas.size(), a.g_sigma, method, &out));
    emit(a.common.out, take(out));
}

// gate / scan ----------------------------------------------------------------

struct GateArgs {
    Common common;
    std::string protocol;
    std::string mode{"ideal"};
    double delta{1.0};
    double min_g_sigma{12.0};
    double g_sigma{0.0};
    double sigma_error{0.0};
    double delay_error{0.0};
    bool scan{false};
    std::vector<double> sigma_errors;
    std::vector<double> delay_errors{0.0, 0.05, 0.1};
};

tvs_protocol_settings gate_settings(const GateArgs& a) {
    tvs_protocol_settings s;
    tvs_protocol_settings_default(&s);
    s.delta = a.delta;
    s.min_g_sigma = a.min_g_sigma;
    s.fixed_g_sigma = a.g_sigma;
    s.evolve.abs_tol = a.common.abs_tol;
    s.evolve.rel_tol = a.common.rel_tol;
    return s;
}

tvs_protocol parse_protocol_name(const std::string& name) {
    tvs_protocol p{};
    if (tvs_protocol_parse(name.c_str(), &p) != TVS_OK) {
        usage_error("unknown protocol '" + name +
                    "' (swap, phase, cnot, entangle, map_atom_to_atom, map_cavity_to_atom, map_atom_to_cavity)");
    }
    return p;
}

void run_scan(GateArgs& a) {
    const auto protocol = parse_protocol_name(a.protocol);
    if (a.sigma_errors.empty()) {
        for (int k = -10; k <= 10; ++k) a.sigma_errors.push_back(0.01 * k);
    }
    const auto settings = gate_settings(a);
    tvs_text* out = nullptr;
    check(tvs_scan_csv(protocol, a.sigma_errors.data(), a.sigma_errors.size(), a.delay_errors.data(),
                       a.delay_errors.size(), &settings, a.common.jobs, &out));
    emit(a.common.out, take(out));
}

void run_gate(CLI::App*, GateArgs& a) {
    if (!a.common.preset.empty()) {
        if (a.common.preset != "fig6") usage_error("gate: unknown preset " + a.common.preset + " (fig6)");
        a.protocol = "entangle";
        a.scan = true;
    }
    if (a.protocol.empty()) usage_error("gate: missing protocol name");
    if (a.scan) {
        run_scan(a);
        return;
    }
    const auto protocol = parse_protocol_name(a.protocol);
    if (a.mode != "ideal" && a.mode != "dynamics") usage_error("gate: --mode must be ideal or dynamics");
    const auto settings = gate_settings(a);
    tvs_report* raw = nullptr;
    check(tvs_run_protocol(protocol, a.mode == "ideal" ? TVS_MODE_IDEAL : TVS_MODE_DYNAMICS, &settings,
                           a.sigma_error, a.delay_error, &raw));
    Report report(raw);
    tvs_text* out = nullptr;
    check(tvs_report_json(report.get(), &out));
    const std::string path = a.common.json.empty() ? a.common.out : a.common.json;
    emit(path, take(out));
}

void add_gate_options(CLI::App* app, GateArgs& a) {
    app->add_option("--delta", a.delta, "half-delay between the atoms")->check(CLI::NonNegativeNumber);
    app->add_option("--min-g-sigma", a.min_g_sigma, "g sigma floor in dynamics mode")->check(CLI::NonNegativeNumber);
    app->add_option("--g-sigma", a.g_sigma, "fixed g sigma for every passage (ignores the angle)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--sigma-errors", a.sigma_errors, "relative sigma errors for scans")->delimiter(',');
    app->add_option("--delay-errors", a.delay_errors, "relative delay errors for scans")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two atoms crossing a single-mode cavity with delayed Gaussian couplings"};
    app.require_subcommand(1);

    SpectrumArgs sp;
    auto* spectrum = app.add_subcommand("spectrum", "adiabatic energies and states, or Q tables, on a tau grid");
    add_common(spectrum, sp.common, false);
    spectrum->add_option("--n", sp.n, "photon index n (N = n + 2)")->check(CLI::Range(-1, 100000));
    spectrum->add_option("--delta", sp.delta, "half-delay")->check(CLI::NonNegativeNumber);
    spectrum->add_option("--tau-min", sp.tau_min);
    spectrum->add_option("--tau-max", sp.tau_max);
    spectrum->add_option("--samples", sp.samples);
    spectrum->add_option("--q-pair", sp.q_pair, "emit Q^{ij} instead of the spectrum, e.g. 1,3")->delimiter(',');
    spectrum->add_option("--deltas", sp.deltas, "half-delays for the Q table")->delimiter(',');

    EvolveArgs ev;
    auto* evolve = app.add_subcommand("evolve", "integrate the dynamics from an adiabatic state");
    add_common(evolve, ev.common, true);
    evolve->add_option("--json", ev.common.json, "summary JSON file");
    evolve->add_option("--n", ev.n)->check(CLI::NonNegativeNumber);
    evolve->add_option("--g-sigma", ev.g_sigma)->check(CLI::PositiveNumber);
    evolve->add_option("--delta", ev.delta)->check(CLI::NonNegativeNumber);
    evolve->add_option("--branch", ev.branch, "initial frame vector 1..4")->check(CLI::Range(1, 4));
    evolve->add_option("--ordering", ev.ordering, "crossing or raw");
    evolve->add_option("--tau0", ev.tau0, "half-width of the span (default delta + 6)");
    evolve->add_option("--samples", ev.samples);
    evolve->add_option("--ns", ev.ns, "sweep over n")->delimiter(',');
    evolve->add_option("--g-sigmas", ev.g_sigmas, "sweep over g sigma")->delimiter(',');
    evolve->add_flag("--final-only", ev.final_only, "sweep output: final eps per n and g sigma");

    AngleArgs an;
    auto* angle = app.add_subcommand("angle", "mixing angle table, asymptotes, g sigma solver");
    add_common(angle, an.common, false);
    angle->add_option("--ns", an.ns, "photon indices")->delimiter(',');
    angle->add_option("--deltas", an.deltas, "explicit half-delays")->delimiter(',');
    angle->add_option("--delta-min", an.delta_min);
    angle->add_option("--delta-max", an.delta_max);
    angle->add_option("--delta-steps", an.delta_steps);
    angle->add_option("--g-sigma", an.g_sigma)->check(CLI::PositiveNumber);
    angle->add_option("--method", an.method, "quadrature, large_delta, small_delta, large_n");
    angle->add_option("--solve", an.solve, "target angle: print the g sigma that produces it");
    angle->add_option("--min-g-sigma", an.min_g_sigma, "g sigma floor for --solve");

    GateArgs gt;
    auto* gate = app.add_subcommand("gate", "run a protocol and print its report");
    add_common(gate, gt.common, true);
    gate->add_option("protocol", gt.protocol, "protocol name");
    gate->add_option("--json", gt.common.json, "report file (default: --out or stdout)");
    gate->add_option("--mode", gt.mode, "ideal or dynamics");
    gate->add_option("--sigma-error", gt.sigma_error, "relative sigma error");
    gate->add_option("--delay-error", gt.delay_error, "relative delay error");
    gate->add_flag("--scan", gt.scan, "fidelity scan CSV instead of a report");
    add_gate_options(gate, gt);

    GateArgs sc;
    sc.protocol = "entangle";
    auto* scan = app.add_subcommand("scan", "fidelity scan over sigma and delay errors (dynamics mode)");
    add_common(scan, sc.common, true);
    scan->add_option("--protocol", sc.protocol, "protocol name");
    add_gate_options(scan, sc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        for (auto [sub, common] : {std::pair{spectrum, &sp.common}, std::pair{evolve, &ev.common},
                                   std::pair{angle, &an.common}, std::pair{gate, &gt.common},
                                   std::pair{scan, &sc.common}}) {
            if (*sub) apply_config(sub, common->config);
        }
        if (*spectrum) run_spectrum(spectrum, sp);
        if (*evolve) run_evolve(evolve, ev);
        if (*angle) run_angle(angle, an);
        if (*gate) run_gate(gate, gt);
        if (*scan) {
            if (!sc.common.preset.empty() && sc.common.preset != "fig6") {
                usage_error("scan: unknown preset " + sc.common.preset + " (fig6)");
            }
            run_scan(sc);
        }
    } catch (const CliError& e) {
        std::cerr << "tavis: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "tavis: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
