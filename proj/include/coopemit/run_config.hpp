// run_config.hpp: JSON run configuration.
//
// {
//   "mode": "couplings" | "evolve" | "two-qubit" | "modes" | "sweep",
//   "bath": {"ferromagnet": {...material...}} | {"couplings": {...}} | {"couplings_file": "path"},
//   "array": {"n_qubits": 9, "spacing_nm": 20, "omega_qi_GHz": 1.75},
//   "integrator": {"rtol": 1e-9, "atol": 1e-12, "t_end": 30, "dt_out": 0.01,
//                  "method": "dopri5" | "rk4", "rk4_step": 0},
//   "sweep": {"variable": "k0" | "N", "values": [...]},
//   "two_qubit": {"gamma0": 1, "gs": 0.3, "Ja": 0.3, "Js": 0},
//   "output": "directory",
//   "qubit_cap": 12
// }
//
// Every section except "mode" is optional where the mode allows it. Unknown keys
// are rejected. "array" entries override the material's N and a_q_nm and the
// qubit frequency derived from Delta0 - gtilde B0. A metadata file written by a
// previous run is accepted in place of a config: its "resolved_config" is used.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coopemit/coupling_model.hpp"
#include "coopemit/evolve.hpp"
#include "coopemit/ferromagnet.hpp"
#include "coopemit/two_qubit.hpp"

namespace coopemit {

enum class RunMode { couplings, evolve, two_qubit, modes, sweep };

std::string to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);  // throws ValidationError

struct ArrayOverrides {
    std::optional<int> n_qubits;
    std::optional<double> spacing_nm;
    std::optional<double> omega_qi_GHz;
};

struct IntegratorConfig {
    double rtol{1e-9};
    double atol{1e-12};
    double t_end{30.0};
    double dt_out{0.01};
    IntegratorMethod method{IntegratorMethod::dormand_prince};
    double rk4_step{0.0};
};

struct SweepConfig {
    std::string variable;  // "k0" or "N"
    std::vector<double> values;
};

struct RunConfig {
    RunMode mode{RunMode::evolve};
    std::optional<FerroMaterial> ferromagnet;
    std::optional<CouplingMatrices> couplings;
    ArrayOverrides array;
    IntegratorConfig integrator;
    std::optional<SweepConfig> sweep;
    TwoQubitParams two_qubit;
    std::string output{"coopemit_out"};
    int qubit_cap{kDefaultQubitCap};

    // The ferromagnet material with array overrides applied.
    FerroMaterial material() const;
    QubitArray qubit_array() const;
    // Couplings from whichever bath source is configured (normalized for ferromagnets).
    CouplingMatrices coupling_matrices() const;
    int n_qubits() const;
    EvolveOptions evolve_options() const;
};

// Field-level ValidationError on schema violations. When mode_override is set the
// document's "mode" may be absent; if present it must agree.
RunConfig parse_config(const nlohmann::json& doc, std::optional<RunMode> mode_override = std::nullopt);
RunConfig load_config(const std::string& path, std::optional<RunMode> mode_override = std::nullopt);

// Fully resolved form; parse_config(resolved_config_json(c)) reproduces c.
nlohmann::json resolved_config_json(const RunConfig& c);

} // namespace coopemit
