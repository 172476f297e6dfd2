#include "coopemit/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "coopemit/errors.hpp"

namespace coopemit {

std::string format_number(double v) {
    if (v == 0.0) return "0";  // folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string header(int n) {
    std::string h = "tau";
    for (int a = 1; a <= n; ++a) h += ",R_" + std::to_string(a);
    h += ",R_tot,delta_1N";
    for (int a = 1; a <= n; ++a) h += ",pop_" + std::to_string(a);
    return h;
}

} // namespace

void write_trajectory_csv(const std::string& path, const EmissionTrajectory& traj) {
    std::ofstream out = open_out(path);
    const int n = traj.n_qubits;
    out << header(n) << '\n';
    for (std::size_t s = 0; s < traj.samples(); ++s) {
        const auto r = static_cast<Eigen::Index>(s);
        std::string line = format_number(traj.times[s]);
        for (int a = 0; a < n; ++a) line += ',' + format_number(traj.rates(r, a));
        line += ',' + format_number(traj.total(r));
        line += ',' + format_number(traj.delta_1N(r));
        for (int a = 0; a < n; ++a) line += ',' + format_number(traj.populations(r, a));
        out << line << '\n';
    }
    finish(out, path);
}

void write_two_qubit_csv(const std::string& path, const TwoQubitTrajectory& traj) {
    std::ofstream out = open_out(path);
    out << header(2) << ",rho_EE,rho_11,rho_22,rho_GG,re_rho_21\n";
    for (std::size_t s = 0; s < traj.samples(); ++s) {
        const auto r = static_cast<Eigen::Index>(s);
        const TwoQubitState& st = traj.states[s];
        // <e1 g2|rho|e1 g2> = (rho_11 + rho_22)/2 - Re rho_21, and + for <g1 e2|rho|g1 e2>.
        const double half = 0.5 * (st.rho_11 + st.rho_22);
        const double pop1 = st.rho_EE + half - st.re_rho_21;
        const double pop2 = st.rho_EE + half + st.re_rho_21;
        const double values[] = {traj.times[s], traj.R1(r), traj.R2(r), traj.R1(r) + traj.R2(r),
                                 traj.deltaR12(r), pop1, pop2, st.rho_EE, st.rho_11, st.rho_22,
                                 st.rho_GG, st.re_rho_21};
        std::string line;
        for (double v : values) {
            if (!line.empty()) line += ',';
            line += format_number(v);
        }
        out << line << '\n';
    }
    finish(out, path);
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
    finish(out, path);
}

void write_gnuplot_script(const std::string& path, const std::string& csv_name, int n_qubits) {
    std::ostringstream s;
    s << "# usage: gnuplot -p <this file>, from the directory holding the CSV\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'tau'\n"
      << "set multiplot layout 2,1\n"
      << "set ylabel 'R / gamma0'\n"
      << "plot for [c=2:" << n_qubits + 2 << "] '" << csv_name << "' using 1:c with lines\n"
      << "set ylabel 'delta_1N'\n"
      << "plot '" << csv_name << "' using 1:" << n_qubits + 3 << " with lines\n"
      << "unset multiplot\n";
    std::ofstream out = open_out(path);
    out << s.str();
    finish(out, path);
}

nlohmann::json integrator_stats_json(const IntegratorStats& st) {
    return {{"steps", st.steps},
            {"rejected", st.rejected},
            {"rhs_evals", st.rhs_evals},
            {"min_step", std::isfinite(st.min_step) ? st.min_step : 0.0},
            {"max_step", st.max_step}};
}

nlohmann::json diagnostics_json(const EvolveDiagnostics& d) {
    nlohmann::json j = {{"max_trace_drift", d.max_trace_drift},
                        {"max_hermiticity_residual", d.max_hermiticity_residual},
                        {"positivity_warning", d.positivity_warning},
                        {"state_size", d.state_size}};
    j["min_eigenvalue"] = std::isfinite(d.min_eigenvalue) ? nlohmann::json(d.min_eigenvalue) : nlohmann::json();
    return j;
}

} // namespace coopemit
