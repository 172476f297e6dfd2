// coupling_model.hpp: qubit geometry, coupling matrices and their
// symmetric/anti-symmetric split, directional hoppings, effective Hamiltonian.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coopemit {

using cplx = std::complex<double>;

// Equally spaced 1-d chain. Indices are 0-based in code; x_alpha = alpha * spacing.
struct QubitArray {
    int n_qubits{1};
    double spacing_nm{1.0};
    double omega_qi_ghz{0.0};

    QubitArray() = default;
    QubitArray(int n, double spacing, double omega_ghz = 0.0);

    double position(int alpha) const { return alpha * spacing_nm; }
    std::vector<double> positions() const;
};

// Hermitian coherent (J) and dissipative (Gamma) couplings; gamma0 = Gamma_aa.
struct CouplingMatrices {
    Eigen::MatrixXcd J;
    Eigen::MatrixXcd Gamma;
    double gamma0{1.0};

    int size() const { return static_cast<int>(Gamma.rows()); }

    // Independent qubits: Gamma = gamma0 * I, J = 0.
    static CouplingMatrices uncorrelated(int n, double gamma0 = 1.0);
};

// J = Js + i Ja, Gamma = gs + i ga with Js, gs symmetric and Ja, ga anti-symmetric.
struct CouplingDecomposition {
    Eigen::MatrixXd Js;
    Eigen::MatrixXd Ja;
    Eigen::MatrixXd gs;
    Eigen::MatrixXd ga;

    int size() const { return static_cast<int>(Js.rows()); }
    Eigen::MatrixXcd coherent() const;
    Eigen::MatrixXcd dissipative() const;
};

// Directional hoppings for ordered pairs alpha < beta. Only the strict upper
// triangle of each matrix is populated.
//   left(a, b)  multiplies sigma_a^+ sigma_b^-  (b -> a, right-to-left)
//   right(a, b) multiplies sigma_b^+ sigma_a^-  (a -> b, left-to-right)
struct HoppingAmplitudes {
    Eigen::MatrixXcd gammaL;
    Eigen::MatrixXcd gammaR;

    cplx left(int a, int b) const { return gammaL(a, b); }
    cplx right(int a, int b) const { return gammaR(a, b); }
    // Coefficient of sigma_a^+ sigma_b^- for any a != b.
    cplx coefficient(int a, int b) const { return a < b ? gammaL(a, b) : gammaR(b, a); }
};

struct ValidationReport {
    double j_hermiticity_residual{0.0};
    double gamma_hermiticity_residual{0.0};
    double j_diagonal_max{0.0};
    double gamma_diagonal_deviation{0.0};
    double gamma_min_eigenvalue{0.0};
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
    std::string summary() const;
};

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kPsdSlack = 1e-10;

// Largest |M - M^dagger| entry and its location.
struct HermiticityResidual {
    double value{0.0};
    int row{0};
    int col{0};
};
HermiticityResidual hermiticity_residual(const Eigen::MatrixXcd& m);

CouplingDecomposition decompose_couplings(const CouplingMatrices& m);
HoppingAmplitudes compute_hoppings(const CouplingDecomposition& d);
Eigen::MatrixXcd build_effective_hamiltonian(const CouplingDecomposition& d, double gamma0);
ValidationReport validate(const CouplingMatrices& m);

// Reverse the qubit order (x -> -x).
CouplingMatrices mirrored(const CouplingMatrices& m);

} // namespace coopemit
