#include "tavis/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace tavis {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    return ec == std::errc{} ? std::string(buf, end) : std::to_string(value);
}

std::string comment_line(const Parameters& params) {
    std::string out = "#";
    for (const auto& [k, v] : params) out += " " + k + "=" + v;
    return out + "\n";
}

namespace {

void write_row(std::ostringstream& os, const std::vector<double>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << format_double(row[i]);
    }
    os << '\n';
}

std::string join(const std::vector<std::string>& cols) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i];
    }
    return out + "\n";
}

std::string compact_label(const BareState& s) {
    // "|1,g1e2>" -> "1g1e2", safe as a column name
    std::string out;
    for (char c : s.label()) {
        if (c != '|' && c != '>' && c != ',') out += c;
    }
    return out;
}

}  // namespace

std::string spectrum_csv(int n, const PulseConfig& cfg, const std::vector<double>& taus) {
    if (taus.empty()) throw std::invalid_argument("spectrum_csv: empty tau grid");
    std::ostringstream os;
    os << comment_line({{"n", std::to_string(n)}, {"g_sigma", format_double(cfg.g_sigma)},
                        {"delta", format_double(cfg.delta)}, {"samples", std::to_string(taus.size())}});
    std::vector<std::string> cols{"tau", "E1", "E2", "E3", "E4", "E1c", "E2c", "E3c", "E4c"};
    const bool with_states = n >= 0;
    if (with_states) {
        for (int j = 1; j <= 4; ++j) {
            for (int k = 0; k < 4; ++k) cols.push_back("psi" + std::to_string(j) + "_" + std::to_string(k));
        }
    }
    os << join(cols);
    for (double tau : taus) {
        std::vector<double> row{tau};
        const auto raw = adiabatic_energies(n, tau, cfg);
        row.insert(row.end(), raw.begin(), raw.end());
        for (int b = 1; b <= 4; ++b) row.push_back(branch_energy(b, n, tau, cfg, FrameOrdering::crossing_aware));
        if (with_states) {
            const auto frame = crossing_frame(n, tau, cfg);
            for (const auto& v : frame.states) row.insert(row.end(), v.data(), v.data() + 4);
        }
        write_row(os, row);
    }
    return os.str();
}

std::string trajectory_csv(const EvolutionResult& result, int n, int tracked_branch) {
    if (n < 0) throw std::invalid_argument("trajectory_csv: n must be >= 0");
    if (tracked_branch < 1 || tracked_branch > 4) throw std::invalid_argument("trajectory_csv: branch must be in 1..4");
    const auto basis = manifold_basis(n + 2);
    std::ostringstream os;
    os << comment_line({{"n", std::to_string(n)},
                        {"g_sigma", format_double(result.pulse.g_sigma)},
                        {"delta", format_double(result.pulse.delta)},
                        {"tau_begin", format_double(result.taus.front())},
                        {"tau_end", format_double(result.taus.back())},
                        {"samples", std::to_string(result.taus.size())},
                        {"tracked_branch", std::to_string(tracked_branch)},
                        {"norm_drift", format_double(result.norm_drift)}});
    std::vector<std::string> cols{"tau"};
    for (const auto& s : basis.states) {
        cols.push_back("re_" + compact_label(s));
        cols.push_back("im_" + compact_label(s));
    }
    cols.insert(cols.end(), {"norm", "eps1", "eps2", "eps3", "eps4", "proj_re", "proj_im"});
    os << join(cols);

    std::array<std::vector<double>, 4> eps;
    for (int b = 0; b < 4; ++b) eps[b] = nonadiabaticity_eps(b + 1, result, n);
    for (std::size_t k = 0; k < result.taus.size(); ++k) {
        std::vector<double> row{result.taus[k]};
        const auto* blk = result.trajectory[k].block(n + 2);
        for (std::size_t i = 0; i < basis.dimension(); ++i) {
            const complex a = blk ? blk->amplitudes[static_cast<Eigen::Index>(i)] : complex{0.0};
            row.push_back(a.real());
            row.push_back(a.imag());
        }
        row.push_back(result.trajectory[k].norm_squared());
        for (const auto& e : eps) row.push_back(e[k]);
        const auto frame = crossing_frame(n, result.taus[k], result.pulse);
        complex proj = 0.0;
        if (blk) proj = frame.states[static_cast<std::size_t>(tracked_branch - 1)].cast<complex>().dot(blk->amplitudes);
        row.push_back(proj.real());
        row.push_back(proj.imag());
        write_row(os, row);
    }
    return os.str();
}

std::string angle_table_csv(const std::vector<AngleTableRow>& rows, const Parameters& params) {
    std::ostringstream os;
    os << comment_line(params);
    os << "n,delta,g_sigma,phi_quadrature,method,phi_asymptotic,relative_difference\n";
    for (const auto& r : rows) {
        os << r.n << ',' << format_double(r.delta) << ',' << format_double(r.g_sigma) << ','
           << format_double(r.phi_quadrature) << ',' << method_name(r.method) << ',' << format_double(r.phi_asymptotic)
           << ',' << format_double(r.relative_difference) << '\n';
    }
    return os.str();
}

std::string scan_csv(const std::vector<ScanRow>& rows, const Parameters& params) {
    std::vector<std::vector<double>> table;
    for (const auto& r : rows) table.push_back({r.sigma_error, r.delay_error, r.fidelity, r.leaked_probability});
    return table_csv({"dsigma_rel", "ddelay_rel", "fidelity", "p_leak"}, table, params);
}

std::string table_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                      const Parameters& params) {
    std::ostringstream os;
    os << comment_line(params) << join(columns);
    for (const auto& r : rows) {
        if (r.size() != columns.size()) throw std::invalid_argument("table_csv: row width does not match header");
        write_row(os, r);
    }
    return os.str();
}

std::string gate_report_json(const GateReport& report, int indent) {
    using nlohmann::json;
    std::set<BareState> support;
    for (const auto& e : report.entries) {
        for (const auto* st : {&e.input, &e.target, &e.output}) {
            for (const auto& [s, a] : st->entries()) support.insert(s);
        }
    }
    const std::vector<BareState> basis(support.begin(), support.end());
    auto amplitudes = [&](const SystemState& st) {
        json arr = json::array();
        for (const auto& s : basis) {
            const complex a = st.amplitude(s);
            arr.push_back({a.real(), a.imag()});
        }
        return arr;
    };

    json j;
    j["protocol"] = report.protocol;
    j["mode"] = report.mode == Mode::ideal ? "ideal" : "dynamics";
    j["basis"] = json::array();
    for (const auto& s : basis) j["basis"].push_back(s.label());
    j["passes"] = json::array();
    for (const auto& p : report.passes) {
        j["passes"].push_back({{"g_sigma", p.g_sigma},
                               {"delta", p.delta},
                               {"multiplicity", p.multiplicity},
                               {"target_angle", p.target_angle},
                               {"phi_minus1", p.phi_minus1}});
    }
    j["entries"] = json::array();
    for (const auto& e : report.entries) {
        j["entries"].push_back({{"input", e.input_label},
                                {"input_state", amplitudes(e.input)},
                                {"target", amplitudes(e.target)},
                                {"output", amplitudes(e.output)},
                                {"fidelity", e.fidelity},
                                {"leaked_probability", e.leaked_probability}});
    }
    j["mean_fidelity"] = report.mean_fidelity();
    j["min_fidelity"] = report.min_fidelity();
    j["max_leak"] = report.max_leak();
    return j.dump(indent);
}

}  // namespace tavis
