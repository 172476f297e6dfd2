#include "coopemit/density_matrix.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "coopemit/errors.hpp"

namespace coopemit {

DensityMatrix::DensityMatrix(int n, Eigen::MatrixXcd m) : n_qubits(n), data(std::move(m)) {
    const Eigen::Index d = Eigen::Index{1} << n;
    if (data.rows() != d || data.cols() != d)
        throw ValidationError("DensityMatrix: expected a " + std::to_string(d) + "x" +
                              std::to_string(d) + " matrix");
}

double DensityMatrix::purity() const {
    return (data * data).trace().real();
}

double DensityMatrix::hermiticity_residual() const {
    return (data - data.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const Eigen::MatrixXcd h = 0.5 * (data + data.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void check_qubit_cap(int n, int cap) {
    if (n < 1) throw ValidationError("number of qubits must be >= 1");
    if (n > cap)
        throw ResourceError("N = " + std::to_string(n) + " exceeds the qubit cap of " +
                            std::to_string(cap));
}

DensityMatrix basis_state(int n, std::uint32_t index, int cap) {
    check_qubit_cap(n, cap);
    const Eigen::Index d = Eigen::Index{1} << n;
    if (static_cast<Eigen::Index>(index) >= d) throw ValidationError("basis index out of range");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    m(index, index) = 1.0;
    return DensityMatrix(n, std::move(m));
}

DensityMatrix fully_excited_state(int n, int cap) {
    return basis_state(n, basis::fully_excited(), cap);
}

DensityMatrix ground_state(int n, int cap) {
    check_qubit_cap(n, cap);
    return basis_state(n, basis::ground(n), cap);
}

DensityMatrix pure_state(int n, const Eigen::VectorXcd& psi, int cap) {
    check_qubit_cap(n, cap);
    if (psi.size() != (Eigen::Index{1} << n)) throw ValidationError("state vector has wrong length");
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw ValidationError("state vector must be non-zero");
    const Eigen::VectorXcd v = psi / norm;
    return DensityMatrix(n, v * v.adjoint());
}

} // namespace coopemit
