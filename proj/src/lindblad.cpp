#include "coopemit/lindblad.hpp"

#include <vector>

#include "coopemit/errors.hpp"

namespace coopemit {

CouplingMatrices normalized(const CouplingMatrices& m) {
    if (!(m.gamma0 > 0.0)) throw ValidationError("gamma0 must be positive");
    CouplingMatrices out;
    out.J = m.J / m.gamma0;
    out.Gamma = m.Gamma / m.gamma0;
    out.gamma0 = 1.0;
    return out;
}

namespace {

void check_dims(const DensityMatrix& rho, const CouplingMatrices& m) {
    if (m.size() != rho.n_qubits || m.J.rows() != m.Gamma.rows())
        throw ValidationError("density matrix and couplings have inconsistent dimensions");
}

} // namespace

SparseMatrixC no_jump_generator(const CouplingMatrices& m) {
    const int n = m.size();
    const std::uint32_t dim = std::uint32_t{1} << n;
    const Eigen::MatrixXcd k = 0.5 * (m.J - cplx(0.0, 1.0) * m.Gamma);

    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(n * n / 4 + n));
    for (std::uint32_t s = 0; s < dim; ++s) {
        cplx diag = 0.0;
        for (int b = 0; b < n; ++b) {
            if (!basis::excited(s, b, n)) continue;
            diag += k(b, b);
            const std::uint32_t lowered = s | basis::qubit_mask(b, n);
            for (int a = 0; a < n; ++a) {
                if (a == b || basis::excited(s, a, n)) continue;
                const std::uint32_t target = lowered & ~basis::qubit_mask(a, n);
                trip.emplace_back(static_cast<int>(target), static_cast<int>(s), k(a, b));
            }
        }
        if (diag != cplx(0.0)) trip.emplace_back(static_cast<int>(s), static_cast<int>(s), diag);
    }
    SparseMatrixC out(dim, dim);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

Eigen::MatrixXcd liouvillian_apply(const DensityMatrix& rho, const CouplingMatrices& m) {
    check_dims(rho, m);
    const int n = rho.n_qubits;
    const std::uint32_t dim = std::uint32_t{1} << n;
    const SparseMatrixC k = no_jump_generator(m);
    const cplx mi(0.0, -1.0);

    Eigen::MatrixXcd out = mi * (k * rho.data);
    out += (mi * (k * rho.data.adjoint())).adjoint();

    for (int a = 0; a < n; ++a) {
        const std::uint32_t ma = basis::qubit_mask(a, n);
        for (int b = 0; b < n; ++b) {
            const cplx g = m.Gamma(a, b);
            if (g == cplx(0.0)) continue;
            const std::uint32_t mb = basis::qubit_mask(b, n);
            // (s_b^- rho s_a^+)(r, c) = rho(r with b raised, c with a raised)
            for (std::uint32_t c = 0; c < dim; ++c) {
                if (!(c & ma)) continue;
                const std::uint32_t cs = c & ~ma;
                for (std::uint32_t r = 0; r < dim; ++r) {
                    if (!(r & mb)) continue;
                    out(r, c) += g * rho.data(r & ~mb, cs);
                }
            }
        }
    }
    return out;
}

Eigen::MatrixXcd correlators(const DensityMatrix& rho) {
    const int n = rho.n_qubits;
    const std::uint32_t dim = std::uint32_t{1} << n;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    // <s_a^+ s_b^-> = sum_t rho(t, t') with t' = s_a^+ s_b^- t
    for (std::uint32_t t = 0; t < dim; ++t) {
        for (int b = 0; b < n; ++b) {
            if (!basis::excited(t, b, n)) continue;
            c(b, b) += rho.data(t, t);
            const std::uint32_t lowered = t | basis::qubit_mask(b, n);
            for (int a = 0; a < n; ++a) {
                if (a == b || basis::excited(t, a, n)) continue;
                c(a, b) += rho.data(t, lowered & ~basis::qubit_mask(a, n));
            }
        }
    }
    return c;
}

Eigen::VectorXd populations(const DensityMatrix& rho) {
    return correlators(rho).diagonal().real();
}

Eigen::MatrixXd pair_emission_rates(const Eigen::MatrixXcd& corr, const CouplingMatrices& m) {
    const HoppingAmplitudes hop = compute_hoppings(decompose_couplings(m));
    const int n = m.size();
    const cplx i1(0.0, 1.0);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) r(a, b) = 2.0 * (i1 * hop.coefficient(a, b) * corr(a, b)).real();
    return r;
}

Eigen::VectorXd emission_rates(const Eigen::MatrixXcd& corr, const CouplingMatrices& m) {
    if (corr.rows() != m.size()) throw ValidationError("correlator and coupling sizes differ");
    const Eigen::MatrixXd pair = pair_emission_rates(corr, m);
    return pair.rowwise().sum() + m.gamma0 * corr.diagonal().real();
}

Eigen::VectorXd emission_rates(const DensityMatrix& rho, const CouplingMatrices& m) {
    check_dims(rho, m);
    return emission_rates(correlators(rho), m);
}

Eigen::MatrixXd pair_nonreciprocity(const Eigen::MatrixXcd& corr, const CouplingDecomposition& d) {
    const int n = d.size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b)
                out(a, b) = -2.0 * d.Js(a, b) * corr(a, b).imag() - 2.0 * d.Ja(a, b) * corr(a, b).real();
    return out;
}

Eigen::VectorXd emission_rates_from_generator(const DensityMatrix& rho, const CouplingMatrices& m) {
    const DensityMatrix drho(rho.n_qubits, liouvillian_apply(rho, m));
    return -populations(drho);
}

} // namespace coopemit
