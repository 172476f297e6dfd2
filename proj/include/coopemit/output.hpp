// output.hpp: CSV, JSON and gnuplot artifacts.
//
// Numbers are written with 12 significant digits through std::to_chars, so the
// text is locale-independent and identical across repeated runs.

#pragma once

#include <string>

#include "json.hpp"

#include "coopemit/evolve.hpp"
#include "coopemit/two_qubit.hpp"

namespace coopemit {

std::string format_number(double v);

// tau, R_1..R_N, R_tot, delta_1N, pop_1..pop_N
void write_trajectory_csv(const std::string& path, const EmissionTrajectory& traj);
// The same columns for N = 2 followed by rho_EE, rho_11, rho_22, rho_GG, re_rho_21.
void write_two_qubit_csv(const std::string& path, const TwoQubitTrajectory& traj);

void write_json(const std::string& path, const nlohmann::json& doc);

// Plots per-qubit rates, R_tot and delta_1N from a CSV written above.
void write_gnuplot_script(const std::string& path, const std::string& csv_name, int n_qubits);

nlohmann::json integrator_stats_json(const IntegratorStats& st);
nlohmann::json diagnostics_json(const EvolveDiagnostics& d);

} // namespace coopemit
