#include "coopemit/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "coopemit/collective_modes.hpp"
#include "coopemit/coupling_io.hpp"
#include "coopemit/errors.hpp"
#include "coopemit/lindblad.hpp"
#include "coopemit/output.hpp"

namespace coopemit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kGammaNote =
    "Dynamics run in units of gamma0 (time tau = gamma0 t). The absolute gamma0_hz "
    "is evaluated from a closed form whose unit convention is ambiguous; treat it as a label.";

json null_if_nonfinite(double v) { return std::isfinite(v) ? json(v) : json(); }

json scales_json(const RunConfig& c) {
    const CharacteristicScales sc = characteristic_scales(c.material().bath(), c.qubit_array().omega_qi_ghz * 1e9);
    return {{"k0", sc.k0},
            {"k1", sc.k1},
            {"lambda0_nm", null_if_nonfinite(sc.lambda0_nm)},
            {"lambda1_nm", sc.lambda1_nm},
            {"asymmetry", sc.asymmetry},
            {"gamma0_hz", sc.gamma0_hz}};
}

json base_metadata(const RunConfig& c) {
    json meta;
    meta["tool"] = "coopemit";
    meta["mode"] = to_string(c.mode);
    meta["resolved_config"] = resolved_config_json(c);
    meta["n_qubits"] = c.n_qubits();
    meta["units"] = "time in 1/gamma0, rates in gamma0";
    meta["gamma0_note"] = kGammaNote;
    if (c.ferromagnet) meta["scales"] = scales_json(c);
    return meta;
}

json validation_json(const ValidationReport& r) {
    return {{"passed", r.passed()},
            {"j_hermiticity_residual", r.j_hermiticity_residual},
            {"gamma_hermiticity_residual", r.gamma_hermiticity_residual},
            {"j_diagonal_max", r.j_diagonal_max},
            {"gamma_diagonal_deviation", r.gamma_diagonal_deviation},
            {"gamma_min_eigenvalue", r.gamma_min_eigenvalue},
            {"failures", r.failures}};
}

json point_json(const SweepPoint& p) {
    return {{"value", p.value},
            {"k0", p.k0},
            {"N", p.n_qubits},
            {"lambda1_nm", null_if_nonfinite(p.lambda1_nm)},
            {"peak_R_tot", p.peak_R_tot},
            {"peak_abs_delta", p.peak_abs_delta},
            {"peak_delta_time", p.peak_delta_time},
            {"initial_slope", p.initial_slope},
            {"max_excess_over_envelope", p.max_excess_over_envelope},
            {"burst", p.burst},
            {"closure_error", p.closure_error},
            {"max_trace_drift", p.max_trace_drift},
            {"max_hermiticity_residual", p.max_hermiticity_residual},
            {"directory", p.directory}};
}

// Evolution from |E...E> with trajectory, script and metadata written to dir.
SweepPoint run_evolution(const RunConfig& c, const std::string& dir) {
    fs::create_directories(dir);
    const CouplingMatrices m = c.coupling_matrices();
    const int n = m.size();
    EvolveOptions opt = c.evolve_options();
    opt.keep_final_state = false;
    const EvolveResult r = evolve(fully_excited_state(n, c.qubit_cap), m, opt);

    SweepPoint p = analyse_point(r, m);
    p.n_qubits = n;
    p.directory = dir;
    p.lambda1_nm = std::numeric_limits<double>::quiet_NaN();
    if (c.ferromagnet) {
        const CharacteristicScales sc =
            characteristic_scales(c.material().bath(), c.qubit_array().omega_qi_ghz * 1e9);
        p.k0 = sc.k0;
        p.lambda1_nm = sc.lambda1_nm;
    }

    write_trajectory_csv((fs::path(dir) / "trajectory.csv").string(), r.trajectory);
    write_gnuplot_script((fs::path(dir) / "plot.gp").string(), "trajectory.csv", n);
    json meta = base_metadata(c);
    meta["couplings_validation"] = validation_json(validate(m));
    meta["integrator"] = integrator_stats_json(r.diagnostics.stats);
    meta["integrator"]["method"] = c.integrator.method == IntegratorMethod::rk4_fixed ? "rk4" : "dopri5";
    meta["diagnostics"] = diagnostics_json(r.diagnostics);
    meta["emission"] = {{"emitted", r.trajectory.emitted()},
                        {"final_excitation", r.trajectory.final_excitation()},
                        {"initial_excitation", r.trajectory.initial_excitation()}};
    meta["summary"] = point_json(p);
    write_json((fs::path(dir) / "metadata.json").string(), meta);
    return p;
}

// Upper-triangle hoppings as {"pair": [a, b], "left": [re, im], "right": [re, im]}, 1-based.
json hoppings_json(const CouplingMatrices& m) {
    const HoppingAmplitudes h = compute_hoppings(decompose_couplings(m));
    json out = json::array();
    for (int a = 0; a < m.size(); ++a)
        for (int b = a + 1; b < m.size(); ++b)
            out.push_back({{"pair", {a + 1, b + 1}},
                           {"left", {h.left(a, b).real(), h.left(a, b).imag()}},
                           {"right", {h.right(a, b).real(), h.right(a, b).imag()}}});
    return out;
}

void run_couplings(const RunConfig& c) {
    const CouplingMatrices m = c.coupling_matrices();
    save_couplings(m, (fs::path(c.output) / "couplings.json").string());
    json meta = base_metadata(c);
    meta["couplings_validation"] = validation_json(validate(m));
    meta["hoppings"] = hoppings_json(m);
    write_json((fs::path(c.output) / "metadata.json").string(), meta);
}

void run_modes(const RunConfig& c) {
    const CouplingMatrices m = c.coupling_matrices();
    const CollectiveModes modes = diagonalize_decoherence(m);
    write_json((fs::path(c.output) / "modes.json").string(), mode_report(m, modes));
    json meta = base_metadata(c);
    meta["couplings_validation"] = validation_json(validate(m));
    const Eigen::MatrixXcd resid =
        modes.S.adjoint() * m.Gamma * modes.S - Eigen::MatrixXcd(modes.rates.cast<cplx>().asDiagonal());
    meta["modes"] = {{"diagonalization_residual", resid.cwiseAbs().maxCoeff()},
                     {"unitarity_residual",
                      (modes.S.adjoint() * modes.S - Eigen::MatrixXcd::Identity(m.size(), m.size()))
                          .cwiseAbs()
                          .maxCoeff()},
                     {"psd_warning", modes.psd_warning}};
    write_json((fs::path(c.output) / "metadata.json").string(), meta);
}

void run_two_qubit(const RunConfig& c) {
    IntegratorStats st;
    const TwoQubitTrajectory tr = solve_two_qubit(c.two_qubit, c.integrator.t_end, c.integrator.dt_out, {},
                                                  c.integrator.rtol, c.integrator.atol, &st);
    write_two_qubit_csv((fs::path(c.output) / "trajectory.csv").string(), tr);
    write_gnuplot_script((fs::path(c.output) / "plot.gp").string(), "trajectory.csv", 2);
    json meta = base_metadata(c);
    meta["integrator"] = integrator_stats_json(st);
    meta["integrator"]["method"] = "dopri5";
    meta["rates"] = {{"Gamma_1", c.two_qubit.gamma1()}, {"Gamma_2", c.two_qubit.gamma2()}};
    meta["Js_note"] = "Js is ignored by the five-variable closure, which is exact only for Js = 0";
    write_json((fs::path(c.output) / "metadata.json").string(), meta);
}

void summarize(SweepSummary& s) {
    if (s.points.empty()) return;
    const auto best = std::max_element(s.points.begin(), s.points.end(), [](const auto& a, const auto& b) {
        return a.peak_abs_delta < b.peak_abs_delta;
    });
    s.argmax_abs_delta = best->value;

    std::vector<const SweepPoint*> asc;
    for (const auto& p : s.points) asc.push_back(&p);
    std::stable_sort(asc.begin(), asc.end(), [](const auto* a, const auto* b) { return a->value < b->value; });
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.burst_vanishes_at = nan;
    s.burst_last_present = nan;
    for (std::size_t i = asc.size(); i-- > 0;) {
        if (asc[i]->burst) {
            s.burst_last_present = asc[i]->value;
            if (i + 1 < asc.size()) s.burst_vanishes_at = asc[i + 1]->value;
            break;
        }
    }
}

void write_summary(const SweepSummary& s, const std::string& dir) {
    std::ofstream out((fs::path(dir) / "summary.csv").string(), std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write summary.csv in '" + dir + "'");
    out << "value,k0,N,lambda1_nm,peak_R_tot,peak_abs_delta,peak_delta_time,initial_slope,"
           "max_excess_over_envelope,burst,closure_error\n";
    for (const auto& p : s.points) {
        out << format_number(p.value) << ',' << format_number(p.k0) << ',' << p.n_qubits << ','
            << (std::isfinite(p.lambda1_nm) ? format_number(p.lambda1_nm) : std::string("nan")) << ','
            << format_number(p.peak_R_tot) << ',' << format_number(p.peak_abs_delta) << ','
            << format_number(p.peak_delta_time) << ',' << format_number(p.initial_slope) << ','
            << format_number(p.max_excess_over_envelope) << ',' << (p.burst ? 1 : 0) << ','
            << format_number(p.closure_error) << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed for summary.csv");

    json doc;
    doc["variable"] = s.variable;
    doc["points"] = json::array();
    for (const auto& p : s.points) doc["points"].push_back(point_json(p));
    doc["argmax_abs_delta"] = s.argmax_abs_delta;
    doc["burst_last_present"] = null_if_nonfinite(s.burst_last_present);
    doc["burst_vanishes_at"] = null_if_nonfinite(s.burst_vanishes_at);
    write_json((fs::path(dir) / "summary.json").string(), doc);
}

SweepSummary run_sweep(const RunConfig& c, const RunOptions& opt) {
    const SweepConfig& sw = *c.sweep;
    SweepSummary summary;
    summary.variable = sw.variable;
    summary.points.resize(sw.values.size());

    std::vector<RunConfig> configs;
    std::vector<std::string> dirs;
    for (std::size_t i = 0; i < sw.values.size(); ++i) {
        RunConfig pc = c;
        pc.mode = RunMode::evolve;
        pc.sweep.reset();
        if (sw.variable == "k0") {
            FerroMaterial m = *pc.ferromagnet;
            m.k0 = sw.values[i];
            pc.ferromagnet = m;
        } else {
            pc.array.n_qubits = static_cast<int>(sw.values[i]);
        }
        char name[32];
        std::snprintf(name, sizeof name, "point_%03zu", i);
        pc.output = (fs::path(c.output) / name).string();
        dirs.push_back(pc.output);
        configs.push_back(std::move(pc));
    }

    unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(configs.size()));
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    std::vector<std::exception_ptr> errors(configs.size());

    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                const auto t0 = std::chrono::steady_clock::now();
                SweepPoint p = run_evolution(configs[i], dirs[i]);
                p.value = sw.values[i];
                summary.points[i] = p;
                if (opt.log) {
                    const double wall =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                    std::lock_guard<std::mutex> lock(log_mutex);
                    *opt.log << "point " << i << ": " << sw.variable << " = " << format_number(sw.values[i])
                             << ", N = " << p.n_qubits << ", peak |delta_1N| = " << format_number(p.peak_abs_delta)
                             << ", burst = " << (p.burst ? "yes" : "no") << ", " << format_number(wall) << " s\n";
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    summarize(summary);
    write_summary(summary, c.output);
    return summary;
}

} // namespace

SweepPoint analyse_point(const EvolveResult& r, const CouplingMatrices& m) {
    const EmissionTrajectory& tr = r.trajectory;
    const CouplingMatrices mn = normalized(m);
    const int n = mn.size();
    SweepPoint p;
    p.n_qubits = n;
    p.peak_R_tot = tr.total.maxCoeff();
    for (std::size_t s = 0; s < tr.samples(); ++s) {
        const auto i = static_cast<Eigen::Index>(s);
        const double v = std::abs(tr.delta_1N(i));
        if (v > p.peak_abs_delta) {
            p.peak_abs_delta = v;
            p.peak_delta_time = tr.times[s];
        }
        const double envelope = tr.initial_excitation() * std::exp(-tr.times[s]);
        p.max_excess_over_envelope = std::max(p.max_excess_over_envelope, tr.total(i) - envelope);
    }
    double slope = -static_cast<double>(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) slope += std::norm(mn.Gamma(a, b));
    p.initial_slope = slope;
    const double r0 = tr.total(0);
    p.burst = tr.total.size() > 1 && tr.total.tail(tr.total.size() - 1).maxCoeff() > r0 * (1.0 + 1e-9);
    p.closure_error = std::abs(tr.emitted() + tr.final_excitation() - tr.initial_excitation());
    p.max_trace_drift = r.diagnostics.max_trace_drift;
    p.max_hermiticity_residual = r.diagnostics.max_hermiticity_residual;
    return p;
}

SweepSummary run(const RunConfig& c, const RunOptions& opt) {
    fs::create_directories(c.output);
    switch (c.mode) {
    case RunMode::couplings: run_couplings(c); break;
    case RunMode::evolve: {
        const SweepPoint p = run_evolution(c, c.output);
        if (opt.log)
            *opt.log << "evolve: N = " << p.n_qubits << ", peak |delta_1N| = " << format_number(p.peak_abs_delta)
                     << ", closure error = " << format_number(p.closure_error) << "\n";
        break;
    }
    case RunMode::two_qubit: run_two_qubit(c); break;
    case RunMode::modes: run_modes(c); break;
    case RunMode::sweep: return run_sweep(c, opt);
    }
    return {};
}

} // namespace coopemit
