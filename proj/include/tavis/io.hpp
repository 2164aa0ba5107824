// io.hpp: CSV and JSON emitters. Every CSV starts with one "# key=value ..."
// comment line holding the run parameters, then a header row.

#pragma once

#include "tavis/angle.hpp"
#include "tavis/dynamics.hpp"
#include "tavis/gates.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tavis {

using Parameters = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double value);
std::string comment_line(const Parameters& params);

// tau, E1..E4 (raw), E1'..E4' (crossing-aware), then the crossing-aware state
// components psi<j>_<k> (branch j, basis index k). Raw values at tau = 0 use the
// left-hand limit.
std::string spectrum_csv(int n, const PulseConfig& cfg, const std::vector<double>& taus);

// tau, re/im of every basis amplitude of block n + 2, norm, eps1..eps4 and the
// projection <Psi'_branch|psi> (re, im).
std::string trajectory_csv(const EvolutionResult& result, int n, int tracked_branch);

std::string angle_table_csv(const std::vector<AngleTableRow>& rows, const Parameters& params = {});

std::string scan_csv(const std::vector<ScanRow>& rows, const Parameters& params = {});

// Generic numeric table.
std::string table_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                      const Parameters& params = {});

// {"protocol", "mode", "basis": [...labels], "passes": [...], "entries": [{"input",
// "input_state", "target", "output": [[re, im], ...], "fidelity", "leaked_probability"}],
// "mean_fidelity", "min_fidelity", "max_leak"}. Amplitude arrays follow "basis".
std::string gate_report_json(const GateReport& report, int indent = 2);

}  // namespace tavis
