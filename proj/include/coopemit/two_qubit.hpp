// two_qubit.hpp: closed five-variable model of two qubits in their collective basis.
//
// Modes |1> = (|g1 e2> - |e1 g2>)/sqrt2 and |2> = (|g1 e2> + |e1 g2>)/sqrt2 decay at
// Gamma_1 = gamma0 - gs and Gamma_2 = gamma0 + gs. Ja couples them. Js splits the
// mode energies and rotates rho_21; the closure drops that, so it is exact only
// for Js = 0. Js is carried but unused. Time in units of 1/gamma0 when gamma0 = 1.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "coopemit/coupling_model.hpp"
#include "coopemit/density_matrix.hpp"
#include "coopemit/integrator.hpp"

namespace coopemit {

struct TwoQubitParams {
    double gamma0{1.0};
    double gs{0.0};
    double Ja{0.0};
    double Js{0.0};

    double gamma1() const { return gamma0 - gs; }
    double gamma2() const { return gamma0 + gs; }
    void validate() const;
    // N = 2 coupling matrices with J_12 = Js + i Ja and Gamma_12 = gs.
    CouplingMatrices couplings() const;
};

struct TwoQubitState {
    double rho_EE{1.0};
    double rho_11{0.0};
    double rho_22{0.0};
    double rho_GG{0.0};
    double re_rho_21{0.0};

    Eigen::VectorXd to_vector() const;
    static TwoQubitState from_vector(const Eigen::VectorXd& v);
    // Throws ValidationError naming the violated invariant.
    void check(double tol = 1e-10) const;
};

TwoQubitState reduced_rhs(const TwoQubitState& s, const TwoQubitParams& p);

// Reads the five variables off a 4 x 4 density matrix (qubit 1 = most significant bit).
TwoQubitState state_from_density(const DensityMatrix& rho);

struct TwoQubitTrajectory {
    std::vector<double> times;
    std::vector<TwoQubitState> states;
    Eigen::VectorXd R1;
    Eigen::VectorXd R2;
    Eigen::VectorXd deltaR12;  // R1 - R2 = 2 Re d(rho_21)/dt

    std::size_t samples() const { return times.size(); }
};

struct TwoQubitRates {
    double R1;
    double R2;
};
TwoQubitRates reduced_rates(const TwoQubitState& s, const TwoQubitParams& p);

// Throws IntegrationError with the time stamp if a state invariant fails.
TwoQubitTrajectory solve_two_qubit(const TwoQubitParams& p, double t_end, double dt_out,
                                   const TwoQubitState& initial = {}, double rtol = 1e-9,
                                   double atol = 1e-12, IntegratorStats* stats = nullptr);

} // namespace coopemit
