#include "coopemit/evolve.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "coopemit/errors.hpp"
#include "coopemit/lindblad.hpp"
#include "coopemit/sector_engine.hpp"

namespace coopemit {

double simpson(const Eigen::VectorXd& f, double h) {
    const Eigen::Index n = f.size() - 1;  // intervals
    if (n <= 0) return 0.0;
    if (n == 1) return 0.5 * h * (f(0) + f(1));
    auto simpson_even = [&](Eigen::Index first, Eigen::Index intervals) {
        double s = f(first) + f(first + intervals);
        for (Eigen::Index i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(first + i);
        return s * h / 3.0;
    };
    if (n % 2 == 0) return simpson_even(0, n);
    const Eigen::Index m = n - 3;
    const double tail = 3.0 * h / 8.0 * (f(m) + 3.0 * f(m + 1) + 3.0 * f(m + 2) + f(m + 3));
    return (m > 0 ? simpson_even(0, m) : 0.0) + tail;
}

double EmissionTrajectory::emitted() const {
    if (times.size() < 2) return 0.0;
    return simpson(total, times[1] - times[0]);
}

std::vector<double> output_grid(double t_end, double dt_out) {
    if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");
    if (!(dt_out > 0.0)) throw ValidationError("dt_out must be positive");
    const auto n = static_cast<std::size_t>(std::llround(t_end / dt_out));
    if (n == 0 || std::abs(static_cast<double>(n) * dt_out - t_end) > 1e-9 * t_end)
        throw ValidationError("t_end must be an integer multiple of dt_out");
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i + 1) * dt_out;
    grid.back() = t_end;
    return grid;
}

EvolveResult evolve(const DensityMatrix& rho0, const CouplingMatrices& m, const EvolveOptions& opt) {
    const auto wall0 = std::chrono::steady_clock::now();
    check_qubit_cap(rho0.n_qubits, opt.qubit_cap);
    const CouplingMatrices mn = normalized(m);
    if (mn.size() != rho0.n_qubits)
        throw ValidationError("density matrix and couplings have inconsistent dimensions");
    const std::vector<double> grid = output_grid(opt.t_end, opt.dt_out);

    const int n = rho0.n_qubits;
    const SectorLiouvillian engine(mn, rho0);
    Eigen::VectorXcd x = engine.pack(rho0);
    const cplx trace0 = engine.trace(x);

    EvolveResult res;
    EmissionTrajectory& tr = res.trajectory;
    EvolveDiagnostics& dg = res.diagnostics;
    dg.state_size = static_cast<std::size_t>(x.size());
    dg.min_eigenvalue = std::numeric_limits<double>::infinity();
    tr.n_qubits = n;
    const std::size_t samples = grid.size() + 1;
    tr.times.reserve(samples);
    tr.rates.resize(static_cast<Eigen::Index>(samples), n);
    tr.populations.resize(static_cast<Eigen::Index>(samples), n);
    tr.total.resize(static_cast<Eigen::Index>(samples));
    tr.delta_1N.resize(static_cast<Eigen::Index>(samples));

    const Eigen::Index positivity_stride = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(samples / 200));
    auto observe = [&](double t, const Eigen::VectorXcd& y) {
        const auto row = static_cast<Eigen::Index>(tr.times.size());
        const Eigen::MatrixXcd corr = engine.correlators(y);
        const Eigen::VectorXd r = emission_rates(corr, mn);
        tr.times.push_back(t);
        tr.rates.row(row) = r.transpose();
        tr.populations.row(row) = corr.diagonal().real().transpose();
        tr.total(row) = r.sum();
        tr.delta_1N(row) = r(0) - r(n - 1);
        tr.correlators.push_back(corr);
        tr.single_excitation.push_back(engine.single_excitation_block(y));

        dg.max_trace_drift = std::max(dg.max_trace_drift, std::abs(engine.trace(y) - trace0));
        dg.max_hermiticity_residual = std::max(dg.max_hermiticity_residual, engine.hermiticity_residual(y));
        // The spectrum is sampled on about 200 evenly spaced outputs; a full
        // check at every output would cost more than the integration at N = 9.
        const bool check = row % positivity_stride == 0 || static_cast<std::size_t>(row) + 1 == samples;
        if (opt.monitor_positivity && check)
            dg.min_eigenvalue = std::min(dg.min_eigenvalue, engine.min_eigenvalue(y));
    };
    auto rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { engine.apply(y, dy); };

    IntegratorOptions io;
    io.rtol = opt.rtol;
    io.atol = opt.atol;
    if (opt.method == IntegratorMethod::dormand_prince) {
        dg.stats = integrate_dopri5(rhs, x, 0.0, grid, observe, io);
    } else {
        double step = opt.rk4_step;
        if (!(step > 0.0)) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (mn.Gamma + mn.Gamma.adjoint()),
                                                               Eigen::EigenvaluesOnly);
            const double gamma_max = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
            step = 1e-3 / gamma_max;
        }
        io.fixed_step = step;
        dg.stats = integrate_rk4(rhs, x, 0.0, grid, observe, io);
    }

    if (opt.monitor_positivity) dg.positivity_warning = dg.min_eigenvalue < -1e-6;
    if (opt.keep_final_state) res.final_state = engine.unpack(x);
    dg.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return res;
}

NonreciprocityMetrics nonreciprocity_metrics(const EmissionTrajectory& traj, const CouplingMatrices& m) {
    const CouplingDecomposition d = decompose_couplings(normalized(m));
    NonreciprocityMetrics out;
    out.delta_1N = traj.delta_1N;
    out.pair_delta.reserve(traj.samples());
    for (std::size_t s = 0; s < traj.samples(); ++s) {
        out.pair_delta.push_back(pair_nonreciprocity(traj.correlators[s], d));
        const double v = std::abs(traj.delta_1N(static_cast<Eigen::Index>(s)));
        if (v > out.peak_abs_delta) {
            out.peak_abs_delta = v;
            out.peak_time = traj.times[s];
        }
    }
    return out;
}

} // namespace coopemit
