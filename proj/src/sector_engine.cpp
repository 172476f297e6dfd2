#include "coopemit/sector_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Eigenvalues>

#include "coopemit/errors.hpp"

namespace coopemit {

SectorBasis::SectorBasis(int n) : n_(n) {
    check_qubit_cap(n, 30);
    const std::uint32_t dim = std::uint32_t{1} << n;
    states_.assign(static_cast<std::size_t>(n + 1), {});
    position_.assign(dim, -1);
    for (std::uint32_t s = 0; s < dim; ++s) {
        auto& sector = states_[static_cast<std::size_t>(basis::excitation_count(s, n))];
        position_[s] = static_cast<int>(sector.size());
        sector.push_back(s);
    }
    lift_qubit_.assign(static_cast<std::size_t>(n + 1), {});
    lift_target_.assign(static_cast<std::size_t>(n + 1), {});
    for (int k = 0; k < n; ++k) {
        auto& q = lift_qubit_[static_cast<std::size_t>(k)];
        auto& t = lift_target_[static_cast<std::size_t>(k)];
        for (int i = 0; i < size(k); ++i) {
            const std::uint32_t s = state(k, i);
            for (int a = 0; a < n; ++a) {
                if (basis::excited(s, a, n)) continue;
                q.push_back(a);
                t.push_back(position(s & ~basis::qubit_mask(a, n)));
            }
        }
    }
}

int BlockLayout::find(int k_row, int k_col) const {
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].k_row == k_row && blocks[i].k_col == k_col) return static_cast<int>(i);
    return -1;
}

namespace {

SparseMatrixC sector_generator(const SectorBasis& sb, int k, const Eigen::MatrixXcd& kmat) {
    const int n = sb.n_qubits();
    const int d = sb.size(k);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int i = 0; i < d; ++i) {
        const std::uint32_t s = sb.state(k, i);
        cplx diag = 0.0;
        for (int b = 0; b < n; ++b) {
            if (!basis::excited(s, b, n)) continue;
            diag += kmat(b, b);
            const std::uint32_t lowered = s | basis::qubit_mask(b, n);
            for (int a = 0; a < n; ++a) {
                if (a == b || basis::excited(s, a, n)) continue;
                trip.emplace_back(sb.position(lowered & ~basis::qubit_mask(a, n)), i, kmat(a, b));
            }
        }
        if (diag != cplx(0.0)) trip.emplace_back(i, i, diag);
    }
    SparseMatrixC out(d, d);
    out.setFromTriplets(trip.begin(), trip.end());
    out.makeCompressed();
    return out;
}

} // namespace

SectorLiouvillian::SectorLiouvillian(const CouplingMatrices& m, const DensityMatrix& rho0)
    : basis_(rho0.n_qubits), gamma_(m.Gamma) {
    const int n = rho0.n_qubits;
    if (m.size() != n) throw ValidationError("density matrix and couplings have inconsistent dimensions");
    if (rho0.hermiticity_residual() > 1e-10)
        throw ValidationError("initial density matrix is not Hermitian");

    std::set<int> offsets;
    for (int kr = 0; kr <= n; ++kr)
        for (int kc = 0; kc <= n; ++kc) {
            if (offsets.count(kr - kc)) continue;
            bool nonzero = false;
            for (int i = 0; i < basis_.size(kr) && !nonzero; ++i)
                for (int j = 0; j < basis_.size(kc) && !nonzero; ++j)
                    nonzero = rho0.data(basis_.state(kr, i), basis_.state(kc, j)) != cplx(0.0);
            if (nonzero) offsets.insert(kr - kc);
        }
    if (offsets.empty()) offsets.insert(0);
    diagonal_only_ = offsets.size() == 1 && *offsets.begin() == 0;

    for (int kr = 0; kr <= n; ++kr)
        for (int kc = 0; kc <= n; ++kc) {
            if (!offsets.count(kr - kc)) continue;
            BlockLayout::Block b{kr, kc, layout_.total, basis_.size(kr), basis_.size(kc)};
            layout_.blocks.push_back(b);
            layout_.total += b.rows * b.cols;
        }

    const Eigen::MatrixXcd kmat = 0.5 * (m.J - cplx(0.0, 1.0) * m.Gamma);
    for (int k = 0; k <= n; ++k) {
        k_sector_.push_back(sector_generator(basis_, k, kmat));
        k_sector_adj_.push_back(SparseMatrixC(k_sector_.back().adjoint()));
    }
}

Eigen::VectorXcd SectorLiouvillian::pack(const DensityMatrix& rho) const {
    if (rho.n_qubits != n_qubits()) throw ValidationError("density matrix has the wrong size");
    Eigen::VectorXcd x(layout_.total);
    for (const auto& b : layout_.blocks) {
        MapC dst = block(x, b);
        for (Eigen::Index j = 0; j < b.cols; ++j)
            for (Eigen::Index i = 0; i < b.rows; ++i)
                dst(i, j) = rho.data(basis_.state(b.k_row, static_cast<int>(i)),
                                     basis_.state(b.k_col, static_cast<int>(j)));
    }
    return x;
}

DensityMatrix SectorLiouvillian::unpack(const Eigen::VectorXcd& x) const {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& b : layout_.blocks) {
        ConstMapC src = block(x, b);
        for (Eigen::Index j = 0; j < b.cols; ++j)
            for (Eigen::Index i = 0; i < b.rows; ++i)
                m(basis_.state(b.k_row, static_cast<int>(i)), basis_.state(b.k_col, static_cast<int>(j))) =
                    src(i, j);
    }
    return DensityMatrix(n_qubits(), std::move(m));
}

void SectorLiouvillian::add_jumps(const BlockLayout::Block& dst_b, const BlockLayout::Block& src_b,
                                  const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const {
    // dst(i, j) += sum_{a, b} Gamma(a, b) src(lift_b(i), lift_a(j)). Column by column,
    // U(:, b) = sum_a src(:, lift_a(j)) Gamma(a, b) is a small dense product and the
    // row lifts then only gather from U. Hermitian blocks accumulate i <= j and
    // apply() mirrors the lower triangle.
    const bool hermitian_block = dst_b.k_row == dst_b.k_col;
    const int n = n_qubits();
    const int wr = basis_.lift_width(dst_b.k_row);
    const int wc = basis_.lift_width(dst_b.k_col);
    const int* col_q = basis_.lift_qubits(dst_b.k_col);
    const int* col_t = basis_.lift_targets(dst_b.k_col);
    const int* row_t = basis_.lift_targets(dst_b.k_row);
    const int* row_q = basis_.lift_qubits(dst_b.k_row);
    ConstMapC src = block(x, src_b);
    MapC dst = block(out, dst_b);

    Eigen::MatrixXcd gathered(src_b.rows, wc);
    Eigen::MatrixXcd gsub(wc, n);
    Eigen::MatrixXcd u(src_b.rows, n);
    const cplx* up = u.data();
    for (Eigen::Index j = 0; j < dst_b.cols; ++j) {
        for (int c = 0; c < wc; ++c) {
            gathered.col(c) = src.col(col_t[j * wc + c]);
            gsub.row(c) = gamma_.row(col_q[j * wc + c]);
        }
        u.noalias() = gathered * gsub;
        const Eigen::Index i_end = hermitian_block ? j + 1 : dst_b.rows;
        for (Eigen::Index i = 0; i < i_end; ++i) {
            cplx acc = 0.0;
            for (int r = 0; r < wr; ++r)
                acc += up[row_t[i * wr + r] + static_cast<Eigen::Index>(row_q[i * wr + r]) * src_b.rows];
            dst(i, j) += acc;
        }
    }
}

void SectorLiouvillian::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const {
    if (out.size() != x.size()) out.resize(x.size());
    const cplx mi(0.0, -1.0);
    for (const auto& b : layout_.blocks) {
        ConstMapC src = block(x, b);
        MapC dst = block(out, b);
        const bool hermitian_block = b.k_row == b.k_col;
        if (hermitian_block) {
            // With src Hermitian, K src = Y^H for Y = src K^H, and Y is built from
            // contiguous column updates Y(:, i) = sum_l conj(K(i, l)) src(:, l).
            const auto& k = k_sector_[static_cast<std::size_t>(b.k_row)];
            const int* outer = k.outerIndexPtr();
            const int* inner = k.innerIndexPtr();
            const cplx* val = k.valuePtr();
            for (Eigen::Index i = 0; i < b.rows; ++i) {
                auto yi = dst.col(i);
                yi.setZero();
                for (int e = outer[i]; e < outer[i + 1]; ++e) yi += std::conj(val[e]) * src.col(inner[e]);
            }
            // L = -i K src + i src K^H = i (Y - Y^H)
            double* d = reinterpret_cast<double*>(dst.data());
            const Eigen::Index n = b.rows;
            for (Eigen::Index j = 0; j < n; ++j) {
                for (Eigen::Index i = 0; i < j; ++i) {
                    double* u = d + 2 * (i + j * n);
                    double* l = d + 2 * (j + i * n);
                    const double re = -(u[1] + l[1]);
                    const double im = u[0] - l[0];
                    u[0] = re;
                    u[1] = im;
                    l[0] = re;
                    l[1] = -im;
                }
                double* dd = d + 2 * (j + j * n);
                dd[0] = -2.0 * dd[1];
                dd[1] = 0.0;
            }
        } else {
            const auto& kr = k_sector_[static_cast<std::size_t>(b.k_row)];
            const auto& kc_adj = k_sector_adj_[static_cast<std::size_t>(b.k_col)];
            dst.noalias() = mi * (kr * src);
            dst.noalias() -= mi * (src * kc_adj);
        }
        const int s = layout_.find(b.k_row + 1, b.k_col + 1);
        if (s >= 0) add_jumps(b, layout_.blocks[static_cast<std::size_t>(s)], x, out);
        if (hermitian_block) {
            for (Eigen::Index j = 0; j < b.cols; ++j) {
                dst(j, j).imag(0.0);
                for (Eigen::Index i = 0; i < j; ++i) dst(j, i) = std::conj(dst(i, j));
            }
        }
    }
}

Eigen::MatrixXcd SectorLiouvillian::correlators(const Eigen::VectorXcd& x) const {
    const int n = n_qubits();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& b : layout_.blocks) {
        if (b.k_row != b.k_col) continue;
        ConstMapC rho = block(x, b);
        for (int i = 0; i < b.rows; ++i) {
            const std::uint32_t s = basis_.state(b.k_row, i);
            for (int q = 0; q < n; ++q) {
                if (!basis::excited(s, q, n)) continue;
                c(q, q) += rho(i, i);
                const std::uint32_t lowered = s | basis::qubit_mask(q, n);
                for (int a = 0; a < n; ++a) {
                    if (a == q || basis::excited(s, a, n)) continue;
                    c(a, q) += rho(i, basis_.position(lowered & ~basis::qubit_mask(a, n)));
                }
            }
        }
    }
    return c;
}

Eigen::MatrixXcd SectorLiouvillian::single_excitation_block(const Eigen::VectorXcd& x) const {
    const int n = n_qubits();
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
    const int idx = layout_.find(1, 1);
    if (idx < 0) return r;
    ConstMapC rho = block(x, layout_.blocks[static_cast<std::size_t>(idx)]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            r(a, b) = rho(basis_.position(basis::single_excitation(a, n)),
                          basis_.position(basis::single_excitation(b, n)));
    return r;
}

cplx SectorLiouvillian::trace(const Eigen::VectorXcd& x) const {
    cplx t = 0.0;
    for (const auto& b : layout_.blocks)
        if (b.k_row == b.k_col) t += block(x, b).trace();
    return t;
}

double SectorLiouvillian::hermiticity_residual(const Eigen::VectorXcd& x) const {
    double r = 0.0;
    for (const auto& b : layout_.blocks) {
        const int partner = layout_.find(b.k_col, b.k_row);
        if (partner < 0) continue;
        ConstMapC m = block(x, b);
        ConstMapC p = block(x, layout_.blocks[static_cast<std::size_t>(partner)]);
        r = std::max(r, (m - p.adjoint()).cwiseAbs().maxCoeff());
    }
    return r;
}

double SectorLiouvillian::min_eigenvalue(const Eigen::VectorXcd& x) const {
    if (!diagonal_only_) return unpack(x).min_eigenvalue();
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& b : layout_.blocks) {
        ConstMapC m = block(x, b);
        const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
        lo = std::min(lo, es.eigenvalues().minCoeff());
    }
    return lo;
}

} // namespace coopemit
