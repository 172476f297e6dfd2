// lindblad.hpp: master-equation generator and emission observables on dense states.
//
//   drho/dt = -i[H, rho] + sum_ab Gamma_ab (s_b^- rho s_a^+ - 1/2 {s_a^+ s_b^-, rho})
//   H = 1/2 sum_ab J_ab s_a^+ s_b^-
//
// Operators are applied through bit-indexed maps; the 4^N superoperator is never formed.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "coopemit/coupling_model.hpp"
#include "coopemit/density_matrix.hpp"

namespace coopemit {

using SparseMatrixC = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// Couplings rescaled to gamma0 = 1 (time in units of 1/gamma0).
CouplingMatrices normalized(const CouplingMatrices& m);

// K = 1/2 sum_ab (J_ab - i Gamma_ab) s_a^+ s_b^- on the full 2^N space, so that
// drho/dt = -i(K rho - rho K^dagger) + sum_ab Gamma_ab s_b^- rho s_a^+.
SparseMatrixC no_jump_generator(const CouplingMatrices& m);

Eigen::MatrixXcd liouvillian_apply(const DensityMatrix& rho, const CouplingMatrices& m);

// C(a, b) = <s_a^+ s_b^->; the diagonal holds the populations.
Eigen::MatrixXcd correlators(const DensityMatrix& rho);
Eigen::VectorXd populations(const DensityMatrix& rho);

// Per-qubit emission rates from the pair-correlator form:
//   R_a = gamma0 <s_a^+ s_a^-> + sum_{b != a} R_ab,  R_ab = i g_ab <s_a^+ s_b^-> + c.c.
// with g the left hopping for b > a and the right hopping of the pair (b, a) for b < a.
Eigen::VectorXd emission_rates(const Eigen::MatrixXcd& corr, const CouplingMatrices& m);
Eigen::VectorXd emission_rates(const DensityMatrix& rho, const CouplingMatrices& m);

// Pair contributions R_ab (zero diagonal).
Eigen::MatrixXd pair_emission_rates(const Eigen::MatrixXcd& corr, const CouplingMatrices& m);

// Delta R_ab = R_ab - R_ba = -2 Js_ab Im C_ab - 2 Ja_ab Re C_ab.
Eigen::MatrixXd pair_nonreciprocity(const Eigen::MatrixXcd& corr, const CouplingDecomposition& d);

// -d<s_a^+ s_a^->/dt evaluated exactly through the generator: -Tr(n_a L[rho]).
Eigen::VectorXd emission_rates_from_generator(const DensityMatrix& rho, const CouplingMatrices& m);

} // namespace coopemit
