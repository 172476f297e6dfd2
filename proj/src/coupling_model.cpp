#include "coopemit/coupling_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "coopemit/errors.hpp"

namespace coopemit {

QubitArray::QubitArray(int n, double spacing, double omega_ghz)
    : n_qubits(n), spacing_nm(spacing), omega_qi_ghz(omega_ghz) {
    if (n < 1) throw ValidationError("QubitArray: n_qubits must be >= 1");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw ValidationError("QubitArray: spacing must be positive and finite");
}

std::vector<double> QubitArray::positions() const {
    std::vector<double> x(static_cast<std::size_t>(n_qubits));
    for (int a = 0; a < n_qubits; ++a) x[static_cast<std::size_t>(a)] = position(a);
    return x;
}

CouplingMatrices CouplingMatrices::uncorrelated(int n, double gamma0) {
    CouplingMatrices m;
    m.J = Eigen::MatrixXcd::Zero(n, n);
    m.Gamma = gamma0 * Eigen::MatrixXcd::Identity(n, n);
    m.gamma0 = gamma0;
    return m;
}

Eigen::MatrixXcd CouplingDecomposition::coherent() const {
    return Js.cast<cplx>() + cplx(0.0, 1.0) * Ja.cast<cplx>();
}

Eigen::MatrixXcd CouplingDecomposition::dissipative() const {
    return gs.cast<cplx>() + cplx(0.0, 1.0) * ga.cast<cplx>();
}

HermiticityResidual hermiticity_residual(const Eigen::MatrixXcd& m) {
    HermiticityResidual r;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            const double d = std::abs(m(i, j) - std::conj(m(j, i)));
            if (d > r.value) {
                r.value = d;
                r.row = static_cast<int>(i);
                r.col = static_cast<int>(j);
            }
        }
    }
    return r;
}

namespace {

double max_abs(const Eigen::MatrixXcd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const CouplingMatrices& m) {
    const auto n = m.Gamma.rows();
    if (m.Gamma.cols() != n || m.J.rows() != n || m.J.cols() != n || n == 0)
        throw ValidationError("coupling matrices must be square, non-empty and of equal size");
}

void require_hermitian(const Eigen::MatrixXcd& m, const char* name) {
    const auto r = hermiticity_residual(m);
    if (r.value > kHermiticityTol * max_abs(m)) {
        std::ostringstream os;
        os << name << " is not Hermitian: worst entry (" << r.row + 1 << "," << r.col + 1
           << ") residual " << r.value;
        throw ValidationError(os.str());
    }
}

} // namespace

CouplingDecomposition decompose_couplings(const CouplingMatrices& m) {
    require_square(m);
    require_hermitian(m.J, "J");
    require_hermitian(m.Gamma, "Gamma");

    const Eigen::MatrixXd jr = m.J.real();
    const Eigen::MatrixXd ji = m.J.imag();
    const Eigen::MatrixXd gr = m.Gamma.real();
    const Eigen::MatrixXd gi = m.Gamma.imag();

    CouplingDecomposition d;
    d.Js = 0.5 * (jr + jr.transpose());
    d.Ja = 0.5 * (ji - ji.transpose());
    d.gs = 0.5 * (gr + gr.transpose());
    d.ga = 0.5 * (gi - gi.transpose());
    return d;
}

HoppingAmplitudes compute_hoppings(const CouplingDecomposition& d) {
    const int n = d.size();
    HoppingAmplitudes h;
    h.gammaL = Eigen::MatrixXcd::Zero(n, n);
    h.gammaR = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            h.gammaL(a, b) = 0.5 * cplx(d.Js(a, b) + d.ga(a, b), d.Ja(a, b) - d.gs(a, b));
            h.gammaR(a, b) = 0.5 * cplx(d.Js(a, b) - d.ga(a, b), -(d.Ja(a, b) + d.gs(a, b)));
        }
    }
    return h;
}

Eigen::MatrixXcd build_effective_hamiltonian(const CouplingDecomposition& d, double gamma0) {
    const int n = d.size();
    const HoppingAmplitudes h = compute_hoppings(d);
    Eigen::MatrixXcd heff = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        heff(a, a) = cplx(0.0, -0.5 * gamma0);
        for (int b = a + 1; b < n; ++b) {
            heff(a, b) = h.gammaL(a, b);
            heff(b, a) = h.gammaR(a, b);
        }
    }
    return heff;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << (passed() ? "PASS" : "FAIL") << ": herm(J)=" << j_hermiticity_residual
       << " herm(Gamma)=" << gamma_hermiticity_residual << " max|J_aa|=" << j_diagonal_max
       << " max|Gamma_aa-gamma0|=" << gamma_diagonal_deviation
       << " min eig(Gamma)=" << gamma_min_eigenvalue;
    for (const auto& f : failures) os << "\n  - " << f;
    return os.str();
}

ValidationReport validate(const CouplingMatrices& m) {
    ValidationReport rep;
    const auto n = m.Gamma.rows();
    if (n == 0 || m.Gamma.cols() != n || m.J.rows() != n || m.J.cols() != n) {
        rep.failures.push_back("matrix shapes are inconsistent");
        return rep;
    }
    const double scale_j = max_abs(m.J);
    const double scale_g = max_abs(m.Gamma);

    rep.j_hermiticity_residual = hermiticity_residual(m.J).value;
    rep.gamma_hermiticity_residual = hermiticity_residual(m.Gamma).value;
    rep.j_diagonal_max = m.J.diagonal().cwiseAbs().maxCoeff();
    rep.gamma_diagonal_deviation =
        (m.Gamma.diagonal().array() - cplx(m.gamma0, 0.0)).abs().maxCoeff();

    if (rep.j_hermiticity_residual > kHermiticityTol * scale_j)
        rep.failures.push_back("J is not Hermitian");
    if (rep.gamma_hermiticity_residual > kHermiticityTol * scale_g)
        rep.failures.push_back("Gamma is not Hermitian");
    if (rep.j_diagonal_max > kHermiticityTol * std::max(scale_j, m.gamma0))
        rep.failures.push_back("diag(J) must vanish");
    if (!(m.gamma0 > 0.0)) rep.failures.push_back("gamma0 must be positive");
    if (rep.gamma_diagonal_deviation > kHermiticityTol * std::max(scale_g, 1.0))
        rep.failures.push_back("diag(Gamma) must equal gamma0");

    const Eigen::MatrixXcd herm = 0.5 * (m.Gamma + m.Gamma.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    rep.gamma_min_eigenvalue = es.eigenvalues().minCoeff();
    if (rep.gamma_min_eigenvalue < -kPsdSlack * std::abs(m.gamma0)) {
        std::ostringstream os;
        os << "Gamma is not positive semidefinite: min eigenvalue " << rep.gamma_min_eigenvalue;
        rep.failures.push_back(os.str());
    }
    return rep;
}

CouplingMatrices mirrored(const CouplingMatrices& m) {
    const int n = m.size();
    CouplingMatrices out = m;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            out.J(a, b) = m.J(n - 1 - a, n - 1 - b);
            out.Gamma(a, b) = m.Gamma(n - 1 - a, n - 1 - b);
        }
    return out;
}

} // namespace coopemit
