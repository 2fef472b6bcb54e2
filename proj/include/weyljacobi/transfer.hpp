// transfer.hpp — single-step and multi-step transfer matrices, their
// A/B/C/D blocks, and the Dirichlet / anti-Dirichlet matricial solutions
// of the three-term recurrence.
#pragma once

#include "weyljacobi/model.hpp"
#include "weyljacobi/types.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace weyljacobi {

// 2L x 2L symplectic-type structure matrix J = [[0,-1],[1,0]] in L x L blocks.
inline CMatrix j_matrix(int block_size) {
    CMatrix j = CMatrix::Zero(2 * block_size, 2 * block_size);
    j.topRightCorner(block_size, block_size) =
        -CMatrix::Identity(block_size, block_size);
    j.bottomLeftCorner(block_size, block_size) =
        CMatrix::Identity(block_size, block_size);
    return j;
}

// Single-step transfer matrix propagating stacked solution pairs
// (T_{n+1} phi_{n+1}; phi_n) = T_n^z (T_n phi_n; phi_{n-1}).
// Convention T_1 = identity.
inline CMatrix transfer_step(const BlockJacobiModel& model, int site, Complex z) {
    if (site < 1) throw InvalidInput("transfer_step: site >= 1 required");
    const int L = model.block_size();
    CMatrix t = site == 1 ? CMatrix::Identity(L, L) : model.T(site);
    CMatrix t_inv = checked_inverse(t, "transfer_step: T_n inverse");
    CMatrix step(2 * L, 2 * L);
    step.topLeftCorner(L, L) =
        (z * CMatrix::Identity(L, L) - model.V(site)) * t_inv;
    step.topRightCorner(L, L) = -t.adjoint();
    step.bottomLeftCorner(L, L) = t_inv;
    step.bottomRightCorner(L, L) = CMatrix::Zero(L, L);
    return step;
}

struct TransferProduct {
    CMatrix matrix;  // 2L x 2L
    int n_hi = 0;
    int n_lo = 0;
    Complex z;

    int block_size() const { return static_cast<int>(matrix.rows()) / 2; }
    CMatrix a() const { int L = block_size(); return matrix.topLeftCorner(L, L); }
    CMatrix b() const { int L = block_size(); return matrix.topRightCorner(L, L); }
    CMatrix c() const { int L = block_size(); return matrix.bottomLeftCorner(L, L); }
    CMatrix d() const { int L = block_size(); return matrix.bottomRightCorner(L, L); }
};

struct Abcd {
    CMatrix a, b, c, d;
};

inline Abcd abcd(const TransferProduct& tp) {
    return {tp.a(), tp.b(), tp.c(), tp.d()};
}

// Ordered product T_n^z ... T_{m+1}^z (right-to-left sequential
// multiplication); identity for n = m; matrix inverse for n < m. The
// product may be arbitrarily ill-conditioned — downstream block ratios
// stay accurate — so only the inverse path guards conditioning.
inline TransferProduct transfer_product(const BlockJacobiModel& model, int n_hi,
                                        int n_lo, Complex z) {
    if (n_hi < 0 || n_lo < 0) throw InvalidInput("transfer_product: sites >= 0");
    const int L = model.block_size();
    if (n_hi < n_lo) {
        TransferProduct fwd = transfer_product(model, n_lo, n_hi, z);
        return {checked_inverse(fwd.matrix, "transfer_product inverse"), n_hi, n_lo, z};
    }
    CMatrix product = CMatrix::Identity(2 * L, 2 * L);
    for (int k = n_lo + 1; k <= n_hi; ++k)
        product = transfer_step(model, k, z) * product;
    return {std::move(product), n_hi, n_lo, z};
}

// Memoized prefix products T^z(n, 0) for one (model, z) pair. Results are
// identical to transfer_product; the cache only avoids re-multiplication.
// Safe under concurrent reads once warmed via ensure().
class TransferPrefixCache {
  public:
    TransferPrefixCache(const BlockJacobiModel& model, Complex z)
        : model_(&model), z_(z) {
        prefixes_.push_back(
            CMatrix::Identity(2 * model.block_size(), 2 * model.block_size()));
    }

    Complex z() const { return z_; }

    void ensure(int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        while (static_cast<int>(prefixes_.size()) <= n)
            prefixes_.push_back(
                transfer_step(*model_, static_cast<int>(prefixes_.size()), z_) *
                prefixes_.back());
    }

    TransferProduct prefix(int n) {
        ensure(n);
        std::lock_guard<std::mutex> lock(mutex_);
        return {prefixes_[n], n, 0, z_};
    }

  private:
    const BlockJacobiModel* model_;
    Complex z_;
    std::vector<CMatrix> prefixes_;
    std::mutex mutex_;
};

// Dirichlet and anti-Dirichlet matricial solutions psi^{D,z}, psi^{A,z},
// for sites 0 .. N+1. Computed by iterating the recurrence directly, which
// avoids the growth of the stacked T_{n+1} psi_{n+1} entries.
struct SolutionPair {
    std::vector<CMatrix> dirichlet;       // index n -> psi_n^{D,z}
    std::vector<CMatrix> anti_dirichlet;  // index n -> psi_n^{A,z}
    Complex z;
    int horizon = 0;

    // Stacked 2L x L column (T_{n+1} psi_{n+1}; psi_n), 0 <= n <= horizon.
    CMatrix stacked_dirichlet(const BlockJacobiModel& model, int n) const {
        return stack(model, dirichlet, n);
    }
    CMatrix stacked_anti_dirichlet(const BlockJacobiModel& model, int n) const {
        return stack(model, anti_dirichlet, n);
    }

  private:
    CMatrix stack(const BlockJacobiModel& model, const std::vector<CMatrix>& seq,
                  int n) const {
        if (n < 0 || n + 1 >= static_cast<int>(seq.size()))
            throw InvalidInput("stacked solution: site outside computed horizon");
        const int L = static_cast<int>(seq[0].rows());
        CMatrix t = n + 1 == 1 ? CMatrix::Identity(L, L) : model.T(n + 1);
        CMatrix out(2 * L, L);
        out.topRows(L) = t * seq[n + 1];
        out.bottomRows(L) = seq[n];
        return out;
    }
};

inline SolutionPair solutions(const BlockJacobiModel& model, int horizon, Complex z) {
    if (horizon < 1) throw InvalidInput("solutions: horizon >= 1 required");
    const int L = model.block_size();
    const CMatrix id = CMatrix::Identity(L, L);
    const CMatrix zero = CMatrix::Zero(L, L);
    SolutionPair sp;
    sp.z = z;
    sp.horizon = horizon;
    sp.dirichlet = {zero, id};       // psi_0^D = 0, psi_1^D = 1
    sp.anti_dirichlet = {id, zero};  // psi_0^A = 1, psi_1^A = 0
    for (int n = 1; n <= horizon; ++n) {
        CMatrix zv = z * id - model.V(n);
        CMatrix t_next = n + 1 == 1 ? id : model.T(n + 1);
        CMatrix t_here = n == 1 ? id : model.T(n);
        CMatrix rhs_d = zv * sp.dirichlet[n] - t_here.adjoint() * sp.dirichlet[n - 1];
        CMatrix rhs_a =
            zv * sp.anti_dirichlet[n] - t_here.adjoint() * sp.anti_dirichlet[n - 1];
        sp.dirichlet.push_back(checked_solve(t_next, rhs_d, "solutions: T solve"));
        sp.anti_dirichlet.push_back(checked_solve(t_next, rhs_a, "solutions: T solve"));
    }
    return sp;
}

}  // namespace weyljacobi
