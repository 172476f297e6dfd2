// evolve.hpp: time evolution of the full qubit register and emission bookkeeping.
//
// Time is measured in units of 1/gamma0 and rates in units of gamma0: the
// couplings are normalized before integration.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "coopemit/coupling_model.hpp"
#include "coopemit/density_matrix.hpp"
#include "coopemit/integrator.hpp"

namespace coopemit {

struct EvolveOptions {
    double t_end{30.0};
    double dt_out{0.1};
    double rtol{1e-9};
    double atol{1e-12};
    IntegratorMethod method{IntegratorMethod::dormand_prince};
    double rk4_step{0.0};          // 0 selects 1e-3 / gamma_max
    int qubit_cap{kDefaultQubitCap};
    bool keep_final_state{true};
    bool monitor_positivity{true};
};

struct EmissionTrajectory {
    int n_qubits{0};
    std::vector<double> times;
    Eigen::MatrixXd rates;        // samples x N
    Eigen::VectorXd total;        // R_tot
    Eigen::VectorXd delta_1N;     // (R_1 - R_N) / gamma0
    Eigen::MatrixXd populations;  // samples x N
    std::vector<Eigen::MatrixXcd> correlators;        // <s_a^+ s_b^-> per sample
    std::vector<Eigen::MatrixXcd> single_excitation;  // <e_a|rho|e_b> per sample

    std::size_t samples() const { return times.size(); }
    // Integral of R_tot over the sampled window (composite Simpson).
    double emitted() const;
    double initial_excitation() const { return populations.row(0).sum(); }
    double final_excitation() const { return populations.row(populations.rows() - 1).sum(); }
};

struct EvolveDiagnostics {
    IntegratorStats stats;
    double max_trace_drift{0.0};
    double max_hermiticity_residual{0.0};
    double min_eigenvalue{0.0};
    bool positivity_warning{false};
    double wall_seconds{0.0};
    std::size_t state_size{0};   // complex amplitudes carried by the integrator
};

struct EvolveResult {
    EmissionTrajectory trajectory;
    DensityMatrix final_state;
    EvolveDiagnostics diagnostics;
};

EvolveResult evolve(const DensityMatrix& rho0, const CouplingMatrices& m, const EvolveOptions& opt = {});

struct NonreciprocityMetrics {
    std::vector<Eigen::MatrixXd> pair_delta;   // Delta R_ab(t) per sample
    Eigen::VectorXd delta_1N;
    double peak_abs_delta{0.0};
    double peak_time{0.0};
};

NonreciprocityMetrics nonreciprocity_metrics(const EmissionTrajectory& traj, const CouplingMatrices& m);

// Uniform grid dt_out, 2 dt_out, ..., t_end (the t = 0 sample is added by the caller).
// t_end must be an integer multiple of dt_out.
std::vector<double> output_grid(double t_end, double dt_out);

// Composite Simpson rule on a uniform grid (3/8 rule closes an odd interval count).
double simpson(const Eigen::VectorXd& f, double h);

} // namespace coopemit
