// Dense Kronecker-product operators used as an independent reference.
#pragma once

#include <random>

#include <Eigen/Dense>

#include "coopemit/coupling_model.hpp"
#include "coopemit/density_matrix.hpp"

namespace oracle {

using coopemit::cplx;

// s^- on qubit a of n; qubit 0 is the leftmost Kronecker factor, local basis {e, g}.
inline Eigen::MatrixXcd lowering(int a, int n) {
    Eigen::MatrixXcd local(2, 2);
    local << 0, 0, 1, 0;  // |g><e|
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
        const Eigen::MatrixXcd f = q == a ? local : Eigen::MatrixXcd::Identity(2, 2);
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
        out = next;
    }
    return out;
}

inline Eigen::MatrixXcd lindblad(const Eigen::MatrixXcd& rho, const coopemit::CouplingMatrices& m) {
    const int n = m.size();
    const cplx I(0.0, 1.0);
    std::vector<Eigen::MatrixXcd> s;
    for (int a = 0; a < n; ++a) s.push_back(lowering(a, n));
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) h += 0.5 * m.J(a, b) * s[a].adjoint() * s[b];
    Eigen::MatrixXcd out = -I * (h * rho - rho * h);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Eigen::MatrixXcd ab = s[a].adjoint() * s[b];
            out += m.Gamma(a, b) * (s[b] * rho * s[a].adjoint() - 0.5 * (ab * rho + rho * ab));
        }
    return out;
}

inline coopemit::CouplingMatrices random_couplings(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    coopemit::CouplingMatrices m = coopemit::CouplingMatrices::uncorrelated(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            m.J(a, b) = cplx(u(rng), u(rng));
            m.J(b, a) = std::conj(m.J(a, b));
            m.Gamma(a, b) = cplx(u(rng), u(rng)) / static_cast<double>(n);
            m.Gamma(b, a) = std::conj(m.Gamma(a, b));
        }
    return m;
}

inline coopemit::DensityMatrix random_state(int n, std::mt19937& rng) {
    std::normal_distribution<double> g;
    const int dim = 1 << n;
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace();
    return coopemit::DensityMatrix(n, rho);
}

} // namespace oracle
