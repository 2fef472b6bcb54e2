// moebius.hpp — matrix Moebius transformation and its inverse. Both are
// partial functions; undefinedness is reported as a domain error rather
// than a garbage value.
#pragma once

#include "weyljacobi/types.hpp"

#include <optional>

namespace weyljacobi {

struct MoebiusDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct MoebiusMap {
    CMatrix matrix;  // 2L x 2L, invertible

    explicit MoebiusMap(CMatrix m) : matrix(std::move(m)) {
        if (matrix.rows() != matrix.cols() || matrix.rows() % 2 != 0)
            throw InvalidInput("MoebiusMap: matrix must be 2L x 2L");
        if (!is_invertible(matrix))
            throw InvalidInput("MoebiusMap: matrix numerically singular");
    }

    int block_size() const { return static_cast<int>(matrix.rows()) / 2; }
    CMatrix a() const { int L = block_size(); return matrix.topLeftCorner(L, L); }
    CMatrix b() const { int L = block_size(); return matrix.topRightCorner(L, L); }
    CMatrix c() const { int L = block_size(); return matrix.bottomLeftCorner(L, L); }
    CMatrix d() const { int L = block_size(); return matrix.bottomRightCorner(L, L); }
};

// T . Z = (AZ + B)(CZ + D)^{-1}
inline CMatrix moebius(const MoebiusMap& t, const CMatrix& z) {
    CMatrix denom = t.c() * z + t.d();
    if (!is_invertible(denom))
        throw MoebiusDomainError("moebius: CZ + D singular");
    // (AZ+B)(CZ+D)^{-1} via solving the transposed system
    return denom.transpose()
        .fullPivLu()
        .solve((t.a() * z + t.b()).transpose())
        .transpose();
}

// W : T = (WC - A)^{-1}(B - WD)
inline CMatrix inverse_moebius(const CMatrix& w, const MoebiusMap& t) {
    CMatrix lhs = w * t.c() - t.a();
    if (!is_invertible(lhs))
        throw MoebiusDomainError("inverse_moebius: WC - A singular");
    return lhs.fullPivLu().solve(t.b() - w * t.d());
}

// Non-throwing variants for callers that must observe undefinedness.
inline std::optional<CMatrix> try_moebius(const MoebiusMap& t, const CMatrix& z) {
    if (!is_invertible(t.c() * z + t.d())) return std::nullopt;
    return moebius(t, z);
}

inline std::optional<CMatrix> try_inverse_moebius(const CMatrix& w,
                                                  const MoebiusMap& t) {
    if (!is_invertible(w * t.c() - t.a())) return std::nullopt;
    return inverse_moebius(w, t);
}

}  // namespace weyljacobi
