#include "coopemit/collective_modes.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "coopemit/errors.hpp"

namespace coopemit {

namespace {

// Orthonormal basis of the column space of v (n x k) built from P e_0, P e_1, ...
Eigen::MatrixXcd canonical_cluster_basis(const Eigen::MatrixXcd& v) {
    const Eigen::Index n = v.rows();
    const Eigen::Index k = v.cols();
    const Eigen::MatrixXcd proj = v * v.adjoint();
    Eigen::MatrixXcd out(n, k);
    Eigen::Index found = 0;
    for (Eigen::Index e = 0; e < n && found < k; ++e) {
        Eigen::VectorXcd c = proj.col(e);
        for (Eigen::Index q = 0; q < found; ++q) c -= out.col(q).dot(c) * out.col(q);
        for (Eigen::Index q = 0; q < found; ++q) c -= out.col(q).dot(c) * out.col(q);
        const double norm = c.norm();
        if (norm < 1e-6) continue;
        out.col(found++) = c / norm;
    }
    if (found < k) return v;  // numerically impossible for an orthonormal v
    return out;
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> col) {
    const double big = col.cwiseAbs().maxCoeff();
    Eigen::Index pick = 0;
    for (Eigen::Index i = 0; i < col.size(); ++i)
        if (std::abs(col(i)) >= big * (1.0 - 1e-12)) pick = i;
    col *= std::conj(col(pick)) / std::abs(col(pick));
    col(pick) = std::abs(col(pick));
}

} // namespace

CollectiveModes diagonalize_decoherence(const CouplingMatrices& m) {
    const HermiticityResidual res = hermiticity_residual(m.Gamma);
    const double scale = std::max(1.0, m.Gamma.cwiseAbs().maxCoeff());
    if (res.value > kHermiticityTol * scale)
        throw ValidationError("Gamma is not Hermitian: worst entry (" + std::to_string(res.row + 1) + ", " +
                              std::to_string(res.col + 1) + ")");
    const Eigen::MatrixXcd g = 0.5 * (m.Gamma + m.Gamma.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    if (es.info() != Eigen::Success) throw ValidationError("decoherence matrix eigensolver failed");

    CollectiveModes out;
    out.rates = es.eigenvalues();
    out.S = es.eigenvectors();
    const Eigen::Index n = out.rates.size();
    const double tol = 1e-10 * scale;
    for (Eigen::Index first = 0; first < n;) {
        Eigen::Index last = first + 1;
        while (last < n && out.rates(last) - out.rates(first) <= tol) ++last;
        if (last - first > 1) {
            const double mean = out.rates.segment(first, last - first).mean();
            out.S.middleCols(first, last - first) = canonical_cluster_basis(out.S.middleCols(first, last - first));
            out.rates.segment(first, last - first).setConstant(mean);
        }
        first = last;
    }
    for (Eigen::Index c = 0; c < n; ++c) fix_phase(out.S.col(c));
    out.Jmodes = out.S.adjoint() * m.J * out.S;
    out.psd_warning = out.rates.minCoeff() < -kPsdSlack * m.gamma0;
    return out;
}

ModeCouplings transform_couplings(const CouplingMatrices& m, const CollectiveModes& modes) {
    if (m.size() != modes.size()) throw ValidationError("couplings and modes have inconsistent dimensions");
    const CouplingDecomposition d = decompose_couplings(m);
    ModeCouplings out;
    out.Js = modes.S.adjoint() * d.Js.cast<cplx>() * modes.S;
    out.Ja = modes.S.adjoint() * d.Ja.cast<cplx>() * modes.S;
    out.total = out.Js + cplx(0.0, 1.0) * out.Ja;
    return out;
}

ManifoldState project_single_excitation(const Eigen::MatrixXcd& rho1, const CollectiveModes& modes) {
    if (rho1.rows() != modes.size() || rho1.cols() != modes.size())
        throw ValidationError("single-excitation block and modes have inconsistent dimensions");
    return {modes.S.adjoint() * rho1 * modes.S};
}

ManifoldState project_single_excitation(const DensityMatrix& rho, const CollectiveModes& modes) {
    const int n = rho.n_qubits;
    if (n != modes.size()) throw ValidationError("density matrix and modes have inconsistent dimensions");
    Eigen::MatrixXcd rho1(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            rho1(a, b) = rho.data(basis::single_excitation(a, n), basis::single_excitation(b, n));
    return project_single_excitation(rho1, modes);
}

ProbabilityFlow probability_flow(const ManifoldState& ms, const CollectiveModes& modes) {
    const Eigen::Index n = modes.size();
    if (ms.rho.rows() != n) throw ValidationError("manifold state and modes have inconsistent dimensions");
    ProbabilityFlow out;
    out.P.resize(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) out.P(a, b) = (modes.Jmodes(a, b) * ms.rho(b, a)).imag();
    out.DeltaP = out.P - out.P.transpose();
    return out;
}

namespace {

nlohmann::json rows_of(const Eigen::MatrixXd& m) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace

nlohmann::json mode_report(const CouplingMatrices& m, const CollectiveModes& modes) {
    const ModeCouplings mc = transform_couplings(m, modes);
    nlohmann::json doc;
    doc["n"] = modes.size();
    doc["gamma0"] = m.gamma0;
    doc["rates"] = std::vector<double>(modes.rates.data(), modes.rates.data() + modes.rates.size());
    doc["rate_sum"] = modes.rates.sum();
    doc["psd_warning"] = modes.psd_warning;
    // participation[a][n] = |S_an|^2
    doc["participation"] = rows_of(modes.S.cwiseAbs2());
    doc["S_re"] = rows_of(modes.S.real());
    doc["S_im"] = rows_of(modes.S.imag());
    doc["Js_modes_re"] = rows_of(mc.Js.real());
    doc["Js_modes_im"] = rows_of(mc.Js.imag());
    doc["Ja_modes_re"] = rows_of(mc.Ja.real());
    doc["Ja_modes_im"] = rows_of(mc.Ja.imag());
    return doc;
}

} // namespace coopemit
