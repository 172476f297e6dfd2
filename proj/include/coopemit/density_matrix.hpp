// density_matrix.hpp: dense 2^N x 2^N states in the qubit product basis.
//
// Basis convention: qubit 0 (the leftmost) is the most significant bit of the
// index, and a bit value of 0 denotes the excited level, so index 0 is |e...e>
// and index 2^N - 1 is |g...g>. For N = 1 the ordering is {e, g}.

#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "coopemit/coupling_model.hpp"

namespace coopemit {

inline constexpr int kDefaultQubitCap = 12;

namespace basis {

inline std::uint32_t qubit_mask(int alpha, int n) { return std::uint32_t{1} << (n - 1 - alpha); }
inline bool excited(std::uint32_t index, int alpha, int n) { return (index & qubit_mask(alpha, n)) == 0; }
inline int excitation_count(std::uint32_t index, int n) {
    return n - __builtin_popcount(index);
}
inline std::uint32_t fully_excited() { return 0; }
inline std::uint32_t ground(int n) { return (std::uint32_t{1} << n) - 1; }
// Index of the state with only qubit alpha excited.
inline std::uint32_t single_excitation(int alpha, int n) { return ground(n) & ~qubit_mask(alpha, n); }

} // namespace basis

struct DensityMatrix {
    int n_qubits{0};
    Eigen::MatrixXcd data;

    DensityMatrix() = default;
    DensityMatrix(int n, Eigen::MatrixXcd m);

    Eigen::Index dim() const { return data.rows(); }
    cplx trace() const { return data.trace(); }
    double purity() const;
    double hermiticity_residual() const;
    double min_eigenvalue() const;
};

// Throws ResourceError when n exceeds cap.
void check_qubit_cap(int n, int cap = kDefaultQubitCap);

DensityMatrix fully_excited_state(int n, int cap = kDefaultQubitCap);
DensityMatrix ground_state(int n, int cap = kDefaultQubitCap);
DensityMatrix basis_state(int n, std::uint32_t index, int cap = kDefaultQubitCap);
// |psi><psi| for an arbitrary (normalized internally) state vector of length 2^n.
DensityMatrix pure_state(int n, const Eigen::VectorXcd& psi, int cap = kDefaultQubitCap);

} // namespace coopemit
