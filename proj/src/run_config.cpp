#include "coopemit/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "coopemit/coupling_io.hpp"
#include "coopemit/errors.hpp"
#include "coopemit/lindblad.hpp"

namespace coopemit {

using nlohmann::json;

std::string to_string(RunMode m) {
    switch (m) {
    case RunMode::couplings: return "couplings";
    case RunMode::evolve: return "evolve";
    case RunMode::two_qubit: return "two-qubit";
    case RunMode::modes: return "modes";
    case RunMode::sweep: return "sweep";
    }
    return "?";
}

RunMode run_mode_from_string(const std::string& s) {
    for (RunMode m : {RunMode::couplings, RunMode::evolve, RunMode::two_qubit, RunMode::modes, RunMode::sweep})
        if (to_string(m) == s) return m;
    throw ValidationError("mode: unknown value '" + s +
                          "' (expected couplings, evolve, two-qubit, modes or sweep)");
}

namespace {

void reject_unknown(const json& doc, const std::string& where, const std::set<std::string>& allowed) {
    if (!doc.is_object()) throw ValidationError(where + ": must be an object");
    for (const auto& item : doc.items())
        if (!allowed.count(item.key()))
            throw ValidationError(where + ": unknown key '" + item.key() + "'");
}

double number(const json& doc, const std::string& where, const std::string& key, double fallback) {
    if (!doc.contains(key)) return fallback;
    const json& v = doc.at(key);
    if (!v.is_number()) throw ValidationError(where + "." + key + ": must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(where + "." + key + ": must be finite");
    return x;
}

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ValidationError(field + ": " + what);
}

// Prefix errors raised by component parsers with the config path.
template <class F>
auto with_field(const std::string& field, F&& f) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError(field + ": " + e.what());
    }
}

} // namespace

FerroMaterial RunConfig::material() const {
    if (!ferromagnet) throw ValidationError("bath: mode '" + to_string(mode) + "' needs a ferromagnet bath");
    FerroMaterial m = *ferromagnet;
    if (array.n_qubits) m.N = *array.n_qubits;
    if (array.spacing_nm) m.a_q_nm = *array.spacing_nm;
    return m;
}

QubitArray RunConfig::qubit_array() const {
    const FerroMaterial m = material();
    QubitArray a = m.array();
    if (array.omega_qi_GHz) a.omega_qi_ghz = *array.omega_qi_GHz;
    return a;
}

CouplingMatrices RunConfig::coupling_matrices() const {
    if (couplings) return *couplings;
    if (ferromagnet) return coopemit::coupling_matrices(qubit_array(), material().bath());
    if (mode == RunMode::two_qubit) return two_qubit.couplings();
    throw ValidationError("bath: no bath configured");
}

int RunConfig::n_qubits() const {
    if (couplings) return couplings->size();
    if (ferromagnet) return material().N;
    return 2;
}

EvolveOptions RunConfig::evolve_options() const {
    EvolveOptions o;
    o.t_end = integrator.t_end;
    o.dt_out = integrator.dt_out;
    o.rtol = integrator.rtol;
    o.atol = integrator.atol;
    o.method = integrator.method;
    o.rk4_step = integrator.rk4_step;
    o.qubit_cap = qubit_cap;
    return o;
}

RunConfig parse_config(const json& doc, std::optional<RunMode> mode_override) {
    reject_unknown(doc, "config",
                   {"mode", "bath", "array", "integrator", "sweep", "two_qubit", "output", "qubit_cap"});
    RunConfig c;

    if (doc.contains("mode")) {
        require(doc.at("mode").is_string(), "mode", "must be a string");
        c.mode = run_mode_from_string(doc.at("mode").get<std::string>());
        if (mode_override && *mode_override != c.mode)
            throw ValidationError("mode: config says '" + to_string(c.mode) + "' but the command is '" +
                                  to_string(*mode_override) + "'");
    } else if (mode_override) {
        c.mode = *mode_override;
    } else {
        throw ValidationError("mode: missing");
    }

    if (doc.contains("qubit_cap")) {
        require(doc.at("qubit_cap").is_number_integer(), "qubit_cap", "must be an integer");
        c.qubit_cap = doc.at("qubit_cap").get<int>();
        require(c.qubit_cap >= 1 && c.qubit_cap <= kDefaultQubitCap, "qubit_cap", "must lie in [1, 12]");
    }

    if (doc.contains("bath")) {
        const json& b = doc.at("bath");
        reject_unknown(b, "bath", {"ferromagnet", "couplings", "couplings_file"});
        if (b.size() != 1)
            throw ValidationError("bath: exactly one of 'ferromagnet', 'couplings', 'couplings_file' is required");
        if (b.contains("ferromagnet")) {
            c.ferromagnet = with_field("bath.ferromagnet", [&] { return material_from_json(b.at("ferromagnet")); });
        } else if (b.contains("couplings")) {
            c.couplings = with_field("bath.couplings", [&] { return couplings_from_json(b.at("couplings")); });
        } else {
            require(b.at("couplings_file").is_string(), "bath.couplings_file", "must be a path string");
            const std::string path = b.at("couplings_file").get<std::string>();
            c.couplings = with_field("bath.couplings_file", [&] { return load_couplings(path); });
        }
    }

    if (doc.contains("array")) {
        const json& a = doc.at("array");
        reject_unknown(a, "array", {"n_qubits", "spacing_nm", "omega_qi_GHz"});
        if (a.contains("n_qubits")) {
            require(a.at("n_qubits").is_number_integer(), "array.n_qubits", "must be an integer");
            c.array.n_qubits = a.at("n_qubits").get<int>();
            require(*c.array.n_qubits >= 1, "array.n_qubits", "must be >= 1");
        }
        if (a.contains("spacing_nm")) {
            c.array.spacing_nm = number(a, "array", "spacing_nm", 0.0);
            require(*c.array.spacing_nm > 0.0, "array.spacing_nm", "must be positive");
        }
        if (a.contains("omega_qi_GHz")) c.array.omega_qi_GHz = number(a, "array", "omega_qi_GHz", 0.0);
        if (c.couplings) {
            require(!c.array.spacing_nm && !c.array.omega_qi_GHz, "array",
                    "only n_qubits may accompany explicit couplings");
            if (c.array.n_qubits)
                require(*c.array.n_qubits == c.couplings->size(), "array.n_qubits",
                        "does not match the coupling matrices");
        }
    }

    if (doc.contains("integrator")) {
        const json& in = doc.at("integrator");
        reject_unknown(in, "integrator", {"rtol", "atol", "t_end", "dt_out", "method", "rk4_step"});
        IntegratorConfig& ic = c.integrator;
        ic.rtol = number(in, "integrator", "rtol", ic.rtol);
        ic.atol = number(in, "integrator", "atol", ic.atol);
        ic.t_end = number(in, "integrator", "t_end", ic.t_end);
        ic.dt_out = number(in, "integrator", "dt_out", ic.dt_out);
        ic.rk4_step = number(in, "integrator", "rk4_step", ic.rk4_step);
        if (in.contains("method")) {
            require(in.at("method").is_string(), "integrator.method", "must be a string");
            const std::string m = in.at("method").get<std::string>();
            if (m == "dopri5") ic.method = IntegratorMethod::dormand_prince;
            else if (m == "rk4") ic.method = IntegratorMethod::rk4_fixed;
            else throw ValidationError("integrator.method: expected 'dopri5' or 'rk4'");
        }
    }
    require(c.integrator.rtol > 0.0, "integrator.rtol", "must be positive");
    require(c.integrator.atol > 0.0, "integrator.atol", "must be positive");
    require(c.integrator.t_end > 0.0, "integrator.t_end", "must be positive");
    require(c.integrator.dt_out > 0.0, "integrator.dt_out", "must be positive");
    require(c.integrator.rk4_step >= 0.0, "integrator.rk4_step", "must be >= 0");
    with_field("integrator", [&] { return output_grid(c.integrator.t_end, c.integrator.dt_out).size(); });

    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        reject_unknown(s, "sweep", {"variable", "values"});
        SweepConfig sc;
        require(s.contains("variable") && s.at("variable").is_string(), "sweep.variable", "must be 'k0' or 'N'");
        sc.variable = s.at("variable").get<std::string>();
        require(sc.variable == "k0" || sc.variable == "N", "sweep.variable", "must be 'k0' or 'N'");
        require(s.contains("values") && s.at("values").is_array(), "sweep.values", "must be a list");
        for (const json& v : s.at("values")) {
            require(v.is_number(), "sweep.values", "entries must be numbers");
            const double x = v.get<double>();
            require(std::isfinite(x), "sweep.values", "entries must be finite");
            if (sc.variable == "N")
                require(v.is_number_integer() && x >= 1, "sweep.values", "N entries must be positive integers");
            sc.values.push_back(x);
        }
        c.sweep = sc;
    }

    if (doc.contains("two_qubit")) {
        const json& t = doc.at("two_qubit");
        reject_unknown(t, "two_qubit", {"gamma0", "gs", "Ja", "Js"});
        c.two_qubit.gamma0 = number(t, "two_qubit", "gamma0", c.two_qubit.gamma0);
        c.two_qubit.gs = number(t, "two_qubit", "gs", c.two_qubit.gs);
        c.two_qubit.Ja = number(t, "two_qubit", "Ja", c.two_qubit.Ja);
        c.two_qubit.Js = number(t, "two_qubit", "Js", c.two_qubit.Js);
        c.two_qubit.validate();
    }

    if (doc.contains("output")) {
        require(doc.at("output").is_string(), "output", "must be a directory path string");
        c.output = doc.at("output").get<std::string>();
        require(!c.output.empty(), "output", "must not be empty");
    }

    // Mode-level requirements.
    const bool has_bath = c.ferromagnet || c.couplings;
    switch (c.mode) {
    case RunMode::two_qubit:
        require(!has_bath, "bath", "not used by mode two-qubit (set 'two_qubit' instead)");
        break;
    case RunMode::sweep:
        require(c.ferromagnet.has_value(), "bath", "mode sweep needs a ferromagnet bath");
        require(c.sweep.has_value(), "sweep", "required for mode sweep");
        require(!c.sweep->values.empty(), "sweep.values", "must be non-empty");
        break;
    default:
        require(has_bath, "bath", "required for mode " + to_string(c.mode));
        break;
    }
    if (c.mode != RunMode::sweep) require(!c.sweep, "sweep", "only allowed with mode sweep");
    if (has_bath) with_field("bath", [&] { return c.n_qubits(); });
    if (c.ferromagnet) {
        try {
            characteristic_scales(c.material().bath(), c.qubit_array().omega_qi_ghz * 1e9);
        } catch (const std::domain_error& e) {
            throw ValidationError(std::string("bath.ferromagnet: ") + e.what());
        }
    }
    if (c.mode == RunMode::evolve || c.mode == RunMode::sweep)
        with_field("qubit_cap", [&] {
            int n = c.n_qubits();
            if (c.sweep && c.sweep->variable == "N")
                for (double v : c.sweep->values) n = std::max(n, static_cast<int>(v));
            check_qubit_cap(n, c.qubit_cap);
            return n;
        });
    return c;
}

RunConfig load_config(const std::string& path, std::optional<RunMode> mode_override) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config: invalid JSON in '" + path + "': " + e.what());
    }
    if (doc.is_object() && doc.contains("resolved_config")) doc = doc.at("resolved_config");
    return parse_config(doc, mode_override);
}

json resolved_config_json(const RunConfig& c) {
    json doc;
    doc["mode"] = to_string(c.mode);
    if (c.ferromagnet) {
        const FerroMaterial m = c.material();
        doc["bath"] = {{"ferromagnet", material_to_json(m)}};
        doc["array"] = {{"n_qubits", m.N}, {"spacing_nm", m.a_q_nm}, {"omega_qi_GHz", c.qubit_array().omega_qi_ghz}};
    } else if (c.couplings) {
        doc["bath"] = {{"couplings", couplings_to_json(*c.couplings)}};
    }
    doc["integrator"] = {{"rtol", c.integrator.rtol},
                         {"atol", c.integrator.atol},
                         {"t_end", c.integrator.t_end},
                         {"dt_out", c.integrator.dt_out},
                         {"method", c.integrator.method == IntegratorMethod::rk4_fixed ? "rk4" : "dopri5"},
                         {"rk4_step", c.integrator.rk4_step}};
    if (c.sweep) {
        json values = json::array();
        for (double v : c.sweep->values) {
            if (c.sweep->variable == "N") values.push_back(static_cast<int>(v));
            else values.push_back(v);
        }
        doc["sweep"] = {{"variable", c.sweep->variable}, {"values", values}};
    }
    if (c.mode == RunMode::two_qubit)
        doc["two_qubit"] = {{"gamma0", c.two_qubit.gamma0},
                            {"gs", c.two_qubit.gs},
                            {"Ja", c.two_qubit.Ja},
                            {"Js", c.two_qubit.Js}};
    doc["output"] = c.output;
    doc["qubit_cap"] = c.qubit_cap;
    return doc;
}

} // namespace coopemit
