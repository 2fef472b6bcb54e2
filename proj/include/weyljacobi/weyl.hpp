// weyl.hpp — Wronskians, quadratic forms, disc center/radius operators,
// surface parametrization, membership tests and radius bounds.
#pragma once

#include "weyljacobi/green.hpp"
#include "weyljacobi/model.hpp"
#include "weyljacobi/transfer.hpp"
#include "weyljacobi/types.hpp"

#include <string>

namespace weyljacobi {

// W(Phi, Psi) = (1/i) Phi* J Psi for stacked 2L x p frames.
inline CMatrix wronskian(const CMatrix& phi, const CMatrix& psi) {
    if (phi.rows() != psi.rows() || phi.rows() % 2 != 0)
        throw InvalidInput("wronskian: frames must share an even row count 2L");
    const int L = static_cast<int>(phi.rows()) / 2;
    return (1.0 / kI) * (phi.adjoint() * j_matrix(L) * psi);
}

// J(Z) = [[0, -1], [1, Z - Z*]].
inline CMatrix j_of_z(const CMatrix& z_matrix) {
    const int L = static_cast<int>(z_matrix.rows());
    if (z_matrix.cols() != L) throw InvalidInput("j_of_z: Z must be square");
    CMatrix j = j_matrix(L);
    j.bottomRightCorner(L, L) = z_matrix - z_matrix.adjoint();
    return j;
}

// 2L x 2L Gram matrix sum_{n=1..N} (psi_n)*(psi_n) of the combined
// (Dirichlet | anti-Dirichlet) solution columns.
inline CMatrix solution_gram(const BlockJacobiModel& model, int volume, Complex z) {
    const int L = model.block_size();
    SolutionPair sp = solutions(model, volume, z);
    CMatrix gram = CMatrix::Zero(2 * L, 2 * L);
    CMatrix row(L, 2 * L);
    for (int n = 1; n <= volume; ++n) {
        row.leftCols(L) = sp.dirichlet[n];
        row.rightCols(L) = sp.anti_dirichlet[n];
        gram += row.adjoint() * row;
    }
    return gram;
}

struct QuadraticForm {
    CMatrix matrix;    // Hermitian 2L x 2L
    Complex z;
    int volume = 0;
    CMatrix boundary;  // Z used (zero for the bare form)
    int sigma = 1;     // sign of Im z

    int block_size() const { return static_cast<int>(matrix.rows()) / 2; }
};

// Q_N^z(Z) = (1/i) T^z(N,0)* J(Z) T^z(N,0). Cross-checked against the
// solution-sum form (1/i)J + 2 Im(z) Gram + boundary correction.
inline QuadraticForm quadratic_form(const BlockJacobiModel& model, int volume,
                                    Complex z, const BoundaryCondition& z_bc) {
    if (volume < 1) throw InvalidInput("quadratic_form: N >= 1 required");
    if (z.imag() == 0.0) throw InvalidInput("quadratic_form: Im z != 0 required");
    const int L = model.block_size();
    if (z_bc.matrix.rows() != L) throw InvalidInput("quadratic_form: Z size mismatch");

    TransferProduct tp = transfer_product(model, volume, 0, z);
    CMatrix q = (1.0 / kI) * (tp.matrix.adjoint() * j_of_z(z_bc.matrix) * tp.matrix);
    q = hermitize(q);

    // Accumulation form: (1/i)J + 2 Im(z) <psi|psi>_N + (psi_N)* (1/i)(Z - Z*) psi_N
    SolutionPair sp = solutions(model, volume, z);
    CMatrix psi_last(L, 2 * L);
    psi_last.leftCols(L) = sp.dirichlet[volume];
    psi_last.rightCols(L) = sp.anti_dirichlet[volume];
    CMatrix alt = (1.0 / kI) * j_matrix(L) +
                  2.0 * z.imag() * solution_gram(model, volume, z) +
                  psi_last.adjoint() *
                      ((1.0 / kI) * (z_bc.matrix - z_bc.matrix.adjoint())) * psi_last;
    const double scale = op_norm(q) + 1.0;
    if (op_norm(q - hermitize(alt)) > 1e-9 * scale)
        throw ConditioningError("quadratic_form: product and solution-sum forms disagree");

    return {std::move(q), z, volume, z_bc.matrix, z.imag() > 0.0 ? 1 : -1};
}

inline QuadraticForm quadratic_form(const BlockJacobiModel& model, int volume,
                                    Complex z) {
    return quadratic_form(model, volume, z,
                          BoundaryCondition::dirichlet(model.block_size()));
}

struct WeylDisc {
    CMatrix center;        // S_N^z
    CMatrix radius_plus;   // R_N^z, PSD for Im z > 0
    CMatrix radius_minus;  // -R_N^{zbar}, PSD for Im z > 0
    Complex z;
    int volume = 0;
};

namespace detail {

// R_N^z and S_N^z from the transfer blocks at one energy.
inline std::pair<CMatrix, CMatrix> radius_center(const BlockJacobiModel& model,
                                                 int volume, Complex z) {
    Abcd bl = abcd(transfer_product(model, volume, 0, z));
    CMatrix bracket = bl.c.adjoint() * bl.a - bl.a.adjoint() * bl.c;
    CMatrix r = kI * checked_inverse(bracket, "disc: radial bracket");
    CMatrix s = kI * r * (bl.a.adjoint() * bl.d - bl.c.adjoint() * bl.b);
    return {hermitize(r), std::move(s)};
}

}  // namespace detail

// Center and both radius factors of the Weyl disc, with the solution-sum
// representation R = [2 Im(z) <psi^D|psi^D>_N]^{-1} as a cross-check.
inline WeylDisc disc(const BlockJacobiModel& model, int volume, Complex z) {
    if (volume < 1) throw InvalidInput("disc: N >= 1 required");
    if (z.imag() == 0.0) throw InvalidInput("disc: Im z != 0 required");
    const int L = model.block_size();

    auto [r, s] = detail::radius_center(model, volume, z);
    auto [r_conj, s_conj] = detail::radius_center(model, volume, std::conj(z));

    CMatrix gram_d = solution_gram(model, volume, z).topLeftCorner(L, L);
    CMatrix r_wronskian =
        checked_inverse(CMatrix(2.0 * z.imag() * gram_d), "disc: Gram inverse");
    if (op_norm(r - hermitize(r_wronskian)) > 1e-9 * (1.0 + op_norm(r)))
        throw ConditioningError("disc: transfer-block and solution-sum radii disagree");

    (void)s_conj;
    return {std::move(s), std::move(r), CMatrix(-r_conj), z, volume};
}

// S_N^z + (R_N^z)^{1/2} W (-R_N^{zbar})^{1/2} for unitary W.
inline CMatrix surface_point(const WeylDisc& d, const CMatrix& w) {
    const int L = static_cast<int>(d.center.rows());
    if (w.rows() != L || w.cols() != L)
        throw InvalidInput("surface_point: W size mismatch");
    if (op_norm(w.adjoint() * w - CMatrix::Identity(L, L)) > 1e-10)
        throw InvalidInput("surface_point: W is not unitary");
    return d.center + psd_sqrt(d.radius_plus) * w * psd_sqrt(d.radius_minus);
}

enum class DiscMembership { Interior, Surface, Exterior };

struct MembershipResult {
    DiscMembership verdict = DiscMembership::Exterior;
    CMatrix witness;   // M = sigma * Phi_G* Q_N^z Phi_G
    double tol = 0.0;
};

inline MembershipResult membership(const BlockJacobiModel& model, int volume,
                                   Complex z, const CMatrix& g) {
    QuadraticForm q = quadratic_form(model, volume, z);
    const int L = q.block_size();
    if (g.rows() != L || g.cols() != L)
        throw InvalidInput("membership: G size mismatch");
    CMatrix frame(2 * L, L);
    frame.topRows(L) = -g;
    frame.bottomRows(L) = CMatrix::Identity(L, L);
    CMatrix m = hermitize(static_cast<double>(q.sigma) *
                          (frame.adjoint() * q.matrix * frame));
    const double g_norm = op_norm(g);
    const double tol = 1e-8 * op_norm(q.matrix) * (1.0 + g_norm * g_norm);

    MembershipResult res;
    res.witness = m;
    res.tol = tol;
    // the closed disc is { G : M <= 0 }; its surface is where M is singular,
    // so the verdict depends on the top eigenvalue alone
    const double top = hermitian_eigenvalues(m)(m.rows() - 1);
    if (top > tol)
        res.verdict = DiscMembership::Exterior;
    else if (top < -tol)
        res.verdict = DiscMembership::Interior;
    else
        res.verdict = DiscMembership::Surface;
    return res;
}

struct RecoveredBoundary {
    CMatrix imaginary_part;  // Y = i(Z* - Z), PSD
    CMatrix canonical_z;     // sigma * i Y / 2: Hermitian part is pure gauge
};

// Recovers the boundary matrix behind a point of the closed Weyl disc:
// Phi_G* Q_N^z Phi_G + (C G - D)* . i(Z* - Z) . (C G - D) = 0 for Im z > 0,
// so Y is obtained by congruence with (C G - D)^{-1}.
inline RecoveredBoundary boundary_from_green(const BlockJacobiModel& model,
                                             int volume, Complex z,
                                             const CMatrix& g) {
    MembershipResult mem = membership(model, volume, z, g);
    if (mem.verdict == DiscMembership::Exterior)
        throw InvalidInput("boundary_from_green: G lies outside the closed disc");
    const int L = static_cast<int>(g.rows());
    Abcd bl = abcd(transfer_product(model, volume, 0, z));
    CMatrix edge = bl.c * g - bl.d;
    if (!is_invertible(edge, 1e-10))
        throw InvalidInput("boundary_from_green: C G - D numerically singular");
    CMatrix edge_inv = checked_inverse(edge, "boundary_from_green: edge inverse");
    const double sigma = z.imag() > 0.0 ? 1.0 : -1.0;
    // mem.witness already carries the sigma factor
    CMatrix y = hermitize(-edge_inv.adjoint() * mem.witness * edge_inv);
    // clamp negative numerical dust so Y is a valid PSD imaginary part
    Eigen::SelfAdjointEigenSolver<CMatrix> es(y);
    RVector ev = es.eigenvalues().cwiseMax(0.0);
    y = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    CMatrix z_canonical = sigma * (kI * 0.5) * y;
    (void)L;
    return {std::move(y), std::move(z_canonical)};
}

struct RadiusBound {
    double radius_bound = 0.0;    // upper bound on ||R_N^z||
    double diameter_bound = 0.0;  // upper bound on ||G(xi) - G(xi')||
};

// ||R_N^z|| <= [2 Im(z)^2 sum_{n=2..N} 1/||T_n||]^{-1}; the diameter bound
// 2 sqrt(||R^z|| ||R^{zbar}||) controls the spread of surface points.
inline RadiusBound radius_bound(const BlockJacobiModel& model, int volume,
                                Complex z) {
    if (volume < 2) throw InvalidInput("radius_bound: N >= 2 required");
    if (z.imag() <= 0.0) throw InvalidInput("radius_bound: Im z > 0 required");
    double inv_sum = 0.0;
    for (int n = 2; n <= volume; ++n) inv_sum += 1.0 / op_norm(model.T(n));
    const double bound = 1.0 / (2.0 * z.imag() * z.imag() * inv_sum);

    WeylDisc d = disc(model, volume, z);
    const double r_norm = op_norm(d.radius_plus);
    if (r_norm > bound * (1.0 + 1e-9))
        throw ConditioningError("radius_bound: computed radius exceeds the bound");
    const double diameter = 2.0 * std::sqrt(r_norm * op_norm(d.radius_minus));
    return {bound, diameter};
}

}  // namespace weyljacobi
