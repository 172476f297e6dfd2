#include "coopemit/two_qubit.hpp"

#include <cmath>

#include "coopemit/errors.hpp"
#include "coopemit/evolve.hpp"

namespace coopemit {

void TwoQubitParams::validate() const {
    if (!(gamma0 > 0.0)) throw ValidationError("two_qubit.gamma0 must be positive");
    if (!std::isfinite(gs) || !std::isfinite(Ja) || !std::isfinite(Js))
        throw ValidationError("two_qubit couplings must be finite");
    if (std::abs(gs) > gamma0) throw ValidationError("two_qubit.gs must satisfy |gs| <= gamma0");
}

CouplingMatrices TwoQubitParams::couplings() const {
    validate();
    CouplingMatrices m;
    m.gamma0 = gamma0;
    m.Gamma = Eigen::MatrixXcd::Identity(2, 2) * gamma0;
    m.Gamma(0, 1) = m.Gamma(1, 0) = gs;
    m.J = Eigen::MatrixXcd::Zero(2, 2);
    m.J(0, 1) = cplx(Js, Ja);
    m.J(1, 0) = cplx(Js, -Ja);
    return m;
}

Eigen::VectorXd TwoQubitState::to_vector() const {
    Eigen::VectorXd v(5);
    v << rho_EE, rho_11, rho_22, rho_GG, re_rho_21;
    return v;
}

TwoQubitState TwoQubitState::from_vector(const Eigen::VectorXd& v) {
    return {v(0), v(1), v(2), v(3), v(4)};
}

void TwoQubitState::check(double tol) const {
    const double p[4] = {rho_EE, rho_11, rho_22, rho_GG};
    for (double x : p)
        if (!(x >= -tol && x <= 1.0 + tol)) throw ValidationError("population outside [0, 1]");
    if (std::abs(rho_EE + rho_11 + rho_22 + rho_GG - 1.0) > tol)
        throw ValidationError("populations do not sum to 1");
    if (std::abs(re_rho_21) > std::sqrt(std::max(0.0, rho_11 * rho_22)) + tol)
        throw ValidationError("coherence exceeds sqrt(rho_11 rho_22)");
}

TwoQubitState reduced_rhs(const TwoQubitState& s, const TwoQubitParams& p) {
    const double g1 = p.gamma1(), g2 = p.gamma2();
    TwoQubitState d;
    d.rho_EE = -(g1 + g2) * s.rho_EE;
    d.rho_11 = -g1 * s.rho_11 + g1 * s.rho_EE - p.Ja * s.re_rho_21;
    d.rho_22 = -g2 * s.rho_22 + g2 * s.rho_EE + p.Ja * s.re_rho_21;
    d.rho_GG = g2 * s.rho_22 + g1 * s.rho_11;
    d.re_rho_21 = 0.5 * (-p.Ja * (s.rho_22 - s.rho_11) - (g1 + g2) * s.re_rho_21);
    return d;
}

TwoQubitRates reduced_rates(const TwoQubitState& s, const TwoQubitParams& p) {
    const TwoQubitState d = reduced_rhs(s, p);
    const double flow = 2.0 * d.re_rho_21;
    const double loss = d.rho_EE - d.rho_GG;
    return {0.5 * (flow - loss), 0.5 * (-flow - loss)};
}

TwoQubitState state_from_density(const DensityMatrix& rho) {
    if (rho.n_qubits != 2) throw ValidationError("two-qubit reduction needs a 4 x 4 density matrix");
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd m1 = Eigen::Vector4cd::Zero(), m2 = Eigen::Vector4cd::Zero();
    const auto e1g2 = static_cast<Eigen::Index>(basis::single_excitation(0, 2));
    const auto g1e2 = static_cast<Eigen::Index>(basis::single_excitation(1, 2));
    m1(g1e2) = r;
    m1(e1g2) = -r;
    m2(g1e2) = r;
    m2(e1g2) = r;
    TwoQubitState s;
    s.rho_EE = rho.data(basis::fully_excited(), basis::fully_excited()).real();
    s.rho_GG = rho.data(basis::ground(2), basis::ground(2)).real();
    s.rho_11 = m1.dot(rho.data * m1).real();
    s.rho_22 = m2.dot(rho.data * m2).real();
    s.re_rho_21 = m2.dot(rho.data * m1).real();
    return s;
}

TwoQubitTrajectory solve_two_qubit(const TwoQubitParams& p, double t_end, double dt_out,
                                   const TwoQubitState& initial, double rtol, double atol,
                                   IntegratorStats* stats) {
    p.validate();
    initial.check();
    const std::vector<double> grid = output_grid(t_end, dt_out);

    TwoQubitTrajectory tr;
    const auto samples = static_cast<Eigen::Index>(grid.size() + 1);
    tr.times.reserve(grid.size() + 1);
    tr.states.reserve(grid.size() + 1);
    tr.R1.resize(samples);
    tr.R2.resize(samples);
    tr.deltaR12.resize(samples);

    auto rhs = [&](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        dy = reduced_rhs(TwoQubitState::from_vector(y), p).to_vector();
    };
    auto observe = [&](double t, const Eigen::VectorXd& y) {
        const TwoQubitState s = TwoQubitState::from_vector(y);
        try {
            s.check();
        } catch (const ValidationError& e) {
            throw IntegrationError(std::string("two-qubit state invariant violated: ") + e.what(), t);
        }
        const TwoQubitRates r = reduced_rates(s, p);
        const auto row = static_cast<Eigen::Index>(tr.times.size());
        tr.times.push_back(t);
        tr.states.push_back(s);
        tr.R1(row) = r.R1;
        tr.R2(row) = r.R2;
        tr.deltaR12(row) = r.R1 - r.R2;
    };

    IntegratorOptions io;
    io.rtol = rtol;
    io.atol = atol;
    Eigen::VectorXd y = initial.to_vector();
    const IntegratorStats st = integrate_dopri5(rhs, y, 0.0, grid, observe, io);
    if (stats) *stats = st;
    return tr;
}

} // namespace coopemit
