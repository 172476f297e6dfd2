// sector_engine.hpp: excitation-number block representation of the master equation.
//
// The generator conserves excitation number on each side of rho, and quantum
// jumps lower both sides by one. The block rho[k, k'] (k excitations in the row
// state, k' in the column state) is therefore fed only by itself and by
// rho[k+1, k'+1], so a state confined to a set of offsets k - k' stays there.
// Starting from |E><E| only the diagonal blocks are ever populated, which
// reduces the N = 9 problem from 4^9 to C(18, 9) amplitudes.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "coopemit/coupling_model.hpp"
#include "coopemit/density_matrix.hpp"
#include "coopemit/lindblad.hpp"

namespace coopemit {

class SectorBasis {
public:
    explicit SectorBasis(int n);

    int n_qubits() const { return n_; }
    int size(int k) const { return static_cast<int>(states_[static_cast<std::size_t>(k)].size()); }
    std::uint32_t state(int k, int i) const { return states_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]; }
    int position(std::uint32_t index) const { return position_[index]; }

    // Every state in sector k has n - k ground qubits. Exciting the r-th of them
    // (ascending qubit order) gives state lift_targets(k)[i * width + r] of sector k+1.
    int lift_width(int k) const { return n_ - k; }
    const int* lift_qubits(int k) const { return lift_qubit_[static_cast<std::size_t>(k)].data(); }
    const int* lift_targets(int k) const { return lift_target_[static_cast<std::size_t>(k)].data(); }

private:
    int n_;
    std::vector<std::vector<std::uint32_t>> states_;
    std::vector<int> position_;
    std::vector<std::vector<int>> lift_qubit_;
    std::vector<std::vector<int>> lift_target_;
};

struct BlockLayout {
    struct Block {
        int k_row;
        int k_col;
        Eigen::Index offset;
        Eigen::Index rows;
        Eigen::Index cols;
    };
    std::vector<Block> blocks;
    Eigen::Index total{0};

    int find(int k_row, int k_col) const;
};

class SectorLiouvillian {
public:
    // m is used as given (callers normalize when working in units of gamma0).
    SectorLiouvillian(const CouplingMatrices& m, const DensityMatrix& rho0);

    const BlockLayout& layout() const { return layout_; }
    const SectorBasis& basis() const { return basis_; }
    int n_qubits() const { return basis_.n_qubits(); }

    Eigen::VectorXcd pack(const DensityMatrix& rho) const;
    DensityMatrix unpack(const Eigen::VectorXcd& x) const;

    // out = L[x]. Requires x to represent a Hermitian matrix.
    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const;

    Eigen::MatrixXcd correlators(const Eigen::VectorXcd& x) const;
    // rho1(a, b) = <e_a| rho |e_b> on single-excitation product states.
    Eigen::MatrixXcd single_excitation_block(const Eigen::VectorXcd& x) const;
    cplx trace(const Eigen::VectorXcd& x) const;
    double hermiticity_residual(const Eigen::VectorXcd& x) const;
    double min_eigenvalue(const Eigen::VectorXcd& x) const;

private:
    using MapC = Eigen::Map<Eigen::MatrixXcd>;
    using ConstMapC = Eigen::Map<const Eigen::MatrixXcd>;

    ConstMapC block(const Eigen::VectorXcd& x, const BlockLayout::Block& b) const {
        return ConstMapC(x.data() + b.offset, b.rows, b.cols);
    }
    MapC block(Eigen::VectorXcd& x, const BlockLayout::Block& b) const {
        return MapC(x.data() + b.offset, b.rows, b.cols);
    }
    void add_jumps(const BlockLayout::Block& dst, const BlockLayout::Block& src,
                   const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const;

    SectorBasis basis_;
    BlockLayout layout_;
    std::vector<SparseMatrixC> k_sector_;
    std::vector<SparseMatrixC> k_sector_adj_;
    Eigen::MatrixXcd gamma_;
    bool diagonal_only_{true};
};

} // namespace coopemit
