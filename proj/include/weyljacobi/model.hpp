// model.hpp — block Jacobi models: coefficient sequences T_n (invertible,
// off-diagonal) and V_n (Hermitian, diagonal), boundary folding and the
// assembly of finite dense Hamiltonians.
#pragma once

#include "weyljacobi/types.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace weyljacobi {

enum class BoundaryKind {
    Hermitian,      // Z = Z*
    UpperHalfPlane  // i(Z* - Z) >= 0
};

struct BoundaryCondition {
    CMatrix matrix;
    BoundaryKind kind = BoundaryKind::Hermitian;

    BoundaryCondition() = default;
    BoundaryCondition(CMatrix z, BoundaryKind k) : matrix(std::move(z)), kind(k) {
        validate();
    }

    static BoundaryCondition dirichlet(int block_size) {
        return {CMatrix::Zero(block_size, block_size), BoundaryKind::Hermitian};
    }
    static BoundaryCondition hermitian(CMatrix xi) {
        return {std::move(xi), BoundaryKind::Hermitian};
    }
    static BoundaryCondition half_plane(CMatrix z) {
        return {std::move(z), BoundaryKind::UpperHalfPlane};
    }

    void validate() const {
        const double scale = 1.0 + op_norm(matrix);
        if (kind == BoundaryKind::Hermitian) {
            if (hermiticity_defect(matrix) > 1e-10 * scale)
                throw InvalidInput("boundary condition: matrix not Hermitian");
        } else {
            // i(Z* - Z) must be positive semi-definite up to tolerance
            CMatrix im = kI * (matrix.adjoint() - matrix);
            if (min_eigenvalue(im) < -1e-10 * scale)
                throw InvalidInput("boundary condition: i(Z* - Z) not PSD");
        }
    }
};

// A block Jacobi model: total coefficient maps n -> T_n (n >= 2) and
// n -> V_n (n >= 1). Closed-form families can be probed at arbitrary n;
// explicit lists are constant-extended by repeating the last entry.
class BlockJacobiModel {
  public:
    using CoefficientMap = std::function<CMatrix(int)>;

    BlockJacobiModel(int block_size, CoefficientMap t, CoefficientMap v,
                     std::string family_tag, bool constant_extended = false)
        : block_size_(block_size),
          t_(std::move(t)),
          v_(std::move(v)),
          family_tag_(std::move(family_tag)),
          constant_extended_(constant_extended) {
        if (block_size_ < 1) throw InvalidInput("block size must be >= 1");
    }

    int block_size() const { return block_size_; }
    const std::string& family_tag() const { return family_tag_; }
    bool constant_extended() const { return constant_extended_; }

    // Off-diagonal block, n >= 2. Rejects ill-conditioned blocks: transfer
    // matrices need T_n^{-1} and near-singular blocks destroy every
    // downstream identity.
    CMatrix T(int n) const {
        if (n < 2) throw InvalidInput("T_n defined for n >= 2");
        CMatrix t = t_(n);
        check_shape(t, "T");
        auto [lo, hi] = sv_extremes(t);
        if (!(lo > 1e-12 * hi) || hi == 0.0)
            throw InvalidInput("T_" + std::to_string(n) + " is numerically singular");
        return t;
    }

    // Diagonal block, n >= 1, Hermitian to tolerance.
    CMatrix V(int n) const {
        if (n < 1) throw InvalidInput("V_n defined for n >= 1");
        CMatrix v = v_(n);
        check_shape(v, "V");
        if (hermiticity_defect(v) > 1e-12 * (1.0 + op_norm(v)))
            throw InvalidInput("V_" + std::to_string(n) + " is not Hermitian");
        return v;
    }

  private:
    void check_shape(const CMatrix& m, const char* name) const {
        if (m.rows() != block_size_ || m.cols() != block_size_)
            throw InvalidInput(std::string(name) + "_n block has wrong dimensions");
    }

    int block_size_;
    CoefficientMap t_;
    CoefficientMap v_;
    std::string family_tag_;
    bool constant_extended_;
};

// Built-in families --------------------------------------------------------

inline BlockJacobiModel free_model(int block_size = 1) {
    CMatrix id = CMatrix::Identity(block_size, block_size);
    CMatrix zero = CMatrix::Zero(block_size, block_size);
    return {block_size, [id](int) { return id; }, [zero](int) { return zero; },
            "free"};
}

inline BlockJacobiModel geometric_model(double c, int block_size = 1) {
    if (c == 0.0) throw InvalidInput("geometric family needs c != 0");
    return {block_size,
            [c, block_size](int n) {
                return CMatrix(std::pow(c, n - 1) *
                               CMatrix::Identity(block_size, block_size));
            },
            [block_size](int) { return CMatrix::Zero(block_size, block_size); },
            "geometric"};
}

// L = 2, T_n = diag(1, c^{n-1}), V_n = 0: a free channel glued to a
// geometric channel, so the two scalar behaviours coexist.
inline BlockJacobiModel block_mixed_model(double c) {
    if (c == 0.0) throw InvalidInput("block_mixed family needs c != 0");
    return {2,
            [c](int n) {
                CMatrix t = CMatrix::Identity(2, 2);
                t(1, 1) = std::pow(c, n - 1);
                return t;
            },
            [](int) { return CMatrix::Zero(2, 2); }, "block_mixed"};
}

inline BlockJacobiModel explicit_model(std::vector<CMatrix> t_list,
                                       std::vector<CMatrix> v_list) {
    if (t_list.empty() || v_list.empty())
        throw InvalidInput("explicit family needs non-empty T and V lists");
    const int block_size = static_cast<int>(v_list.front().rows());
    for (const auto& m : t_list)
        if (m.rows() != block_size || m.cols() != block_size)
            throw InvalidInput("explicit family: L mismatch in T list");
    for (const auto& m : v_list)
        if (m.rows() != block_size || m.cols() != block_size)
            throw InvalidInput("explicit family: L mismatch in V list");

    BlockJacobiModel model(
        block_size,
        // T list starts at n = 2
        [t_list](int n) {
            const size_t idx = std::min<size_t>(n - 2, t_list.size() - 1);
            return t_list[idx];
        },
        [v_list](int n) {
            const size_t idx = std::min<size_t>(n - 1, v_list.size() - 1);
            return v_list[idx];
        },
        "explicit", /*constant_extended=*/true);

    // Validate every listed block eagerly so bad input fails at load.
    for (size_t k = 0; k < t_list.size(); ++k) model.T(static_cast<int>(k) + 2);
    for (size_t k = 0; k < v_list.size(); ++k) model.V(static_cast<int>(k) + 1);
    return model;
}

// Finite-volume Hamiltonian with boundary matrices folded into the first
// and last diagonal block. Folding subtracts: the recurrence reads
// T_{n+1} phi_{n+1} + (V_n - d_{n=1} Zhat - d_{n=N} Z) phi_n + T_n* phi_{n-1},
// so Dirichlet (zero) boundary matrices mean no folding at all.
inline CMatrix assemble_hamiltonian(const BlockJacobiModel& model, int volume,
                                    const BoundaryCondition& zhat,
                                    const BoundaryCondition& z_right) {
    if (volume < 1) throw InvalidInput("assemble_hamiltonian: N >= 1 required");
    if (zhat.kind != BoundaryKind::Hermitian || z_right.kind != BoundaryKind::Hermitian)
        throw InvalidInput("assemble_hamiltonian: boundary conditions must be Hermitian");
    const int L = model.block_size();
    CMatrix h = CMatrix::Zero(volume * L, volume * L);
    for (int n = 1; n <= volume; ++n) {
        CMatrix d = model.V(n);
        if (n == 1) d -= zhat.matrix;
        if (n == volume) d -= z_right.matrix;
        h.block((n - 1) * L, (n - 1) * L, L, L) = hermitize(d);
        if (n >= 2) {
            CMatrix t = model.T(n);
            h.block((n - 2) * L, (n - 1) * L, L, L) = t;
            h.block((n - 1) * L, (n - 2) * L, L, L) = t.adjoint();
        }
    }
    return h;
}

}  // namespace weyljacobi
