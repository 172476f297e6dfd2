// collective_modes.hpp: eigenmodes of the decoherence matrix and the
// single-excitation probability flow between them.
//
// Gamma = S diag(rates) S^dagger. Mode n has jump operator O_n = sum_a conj(S_an) s_a^-
// and single-excitation state |n> = O_n^dagger |G> = sum_a S_an |e_a>.
//
// Conventions: rates ascending; inside a degenerate cluster the basis is the
// Gram-Schmidt image of the unit vectors e_0, e_1, ... under the cluster
// projector; each column's largest-magnitude entry is made real positive, ties
// going to the higher qubit index.

#pragma once

#include "json.hpp"

#include "coopemit/coupling_model.hpp"
#include "coopemit/density_matrix.hpp"

namespace coopemit {

struct CollectiveModes {
    Eigen::MatrixXcd S;       // columns are modes
    Eigen::VectorXd rates;    // Gamma_n, ascending
    Eigen::MatrixXcd Jmodes;  // S^dagger J S
    bool psd_warning{false};  // some rate below -kPsdSlack * gamma0

    int size() const { return static_cast<int>(rates.size()); }
};

struct ModeCouplings {
    Eigen::MatrixXcd Js;     // S^dagger Js S, Hermitian
    Eigen::MatrixXcd Ja;     // S^dagger Ja S, anti-Hermitian
    Eigen::MatrixXcd total;  // Js + i Ja = S^dagger J S
};

// rho_nm = <n|rho|m> on the single-excitation manifold.
struct ManifoldState {
    Eigen::MatrixXcd rho;
};

struct ProbabilityFlow {
    Eigen::MatrixXd P;       // P_nm = Im[J_nm rho_mn]
    Eigen::MatrixXd DeltaP;  // P_nm - P_mn
};

CollectiveModes diagonalize_decoherence(const CouplingMatrices& m);
ModeCouplings transform_couplings(const CouplingMatrices& m, const CollectiveModes& modes);

// From a full state, or from the qubit-basis block rho1(a, b) = <e_a|rho|e_b>.
ManifoldState project_single_excitation(const DensityMatrix& rho, const CollectiveModes& modes);
ManifoldState project_single_excitation(const Eigen::MatrixXcd& rho1, const CollectiveModes& modes);

ProbabilityFlow probability_flow(const ManifoldState& ms, const CollectiveModes& modes);

// Rates, participations |S_an|^2 and the mode-basis couplings.
nlohmann::json mode_report(const CouplingMatrices& m, const CollectiveModes& modes);

} // namespace coopemit
