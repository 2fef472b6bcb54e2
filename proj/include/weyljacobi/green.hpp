// green.hpp — finite-volume Green matrices from transfer blocks, the dense
// solve oracle, the inhomogeneous solver, and finite-N matrix spectral
// measures.
#pragma once

#include "weyljacobi/model.hpp"
#include "weyljacobi/transfer.hpp"
#include "weyljacobi/types.hpp"

#include <vector>

namespace weyljacobi {

enum class GreenCorner { TopLeft, BottomRight, TopRight, BottomLeft };

namespace detail {

// Folded finite-volume matrix without the Hermiticity requirement, for
// half-plane boundary matrices. Same subtraction convention as
// assemble_hamiltonian.
inline CMatrix assemble_folded(const BlockJacobiModel& model, int volume,
                               const CMatrix& zhat, const CMatrix& z_right) {
    if (volume < 1) throw InvalidInput("assemble_folded: N >= 1 required");
    const int L = model.block_size();
    CMatrix h = CMatrix::Zero(volume * L, volume * L);
    for (int n = 1; n <= volume; ++n) {
        CMatrix d = model.V(n);
        if (n == 1) d -= zhat;
        if (n == volume) d -= z_right;
        h.block((n - 1) * L, (n - 1) * L, L, L) = d;
        if (n >= 2) {
            CMatrix t = model.T(n);
            h.block((n - 2) * L, (n - 1) * L, L, L) = t;
            h.block((n - 1) * L, (n - 2) * L, L, L) = t.adjoint();
        }
    }
    return h;
}

}  // namespace detail

// Corner Green matrices for Dirichlet boundary conditions, expressed in
// the A/B/C/D blocks of the transfer matrix over (N, 0). The corner names
// refer to the lattice blocks: TopLeft is G(1,1), TopRight is G(1,N),
// BottomLeft is G(N,1), BottomRight is G(N,N).
inline CMatrix green_dirichlet(const BlockJacobiModel& model, int volume,
                               Complex z, GreenCorner corner) {
    if (volume < 1) throw InvalidInput("green_dirichlet: N >= 1 required");
    if (z.imag() == 0.0) throw InvalidInput("green_dirichlet: Im z != 0 required");
    Abcd blocks = abcd(transfer_product(model, volume, 0, z));
    switch (corner) {
        case GreenCorner::TopLeft:
            return checked_solve(blocks.a, blocks.b, "green_dirichlet: A solve");
        case GreenCorner::TopRight:
            return -checked_inverse(blocks.a, "green_dirichlet: A inverse");
        case GreenCorner::BottomRight:
            return -blocks.c *
                   checked_inverse(blocks.a, "green_dirichlet: A inverse");
        case GreenCorner::BottomLeft:
            return -blocks.d + blocks.c * checked_solve(blocks.a, blocks.b,
                                                        "green_dirichlet: A solve");
    }
    throw InvalidInput("green_dirichlet: unknown corner");
}

// Weyl-Titchmarsh matrix G_N^z(Z): top-left Green matrix with Dirichlet
// left boundary and right boundary Z folded into V_N. For large volumes
// the transfer entries overflow the double range, so the value is then
// obtained by the (entrywise bounded) Schur complement sweep instead.
inline CMatrix green_boundary(const BlockJacobiModel& model, int volume, Complex z,
                              const BoundaryCondition& z_bc) {
    if (volume < 1) throw InvalidInput("green_boundary: N >= 1 required");
    if (z.imag() == 0.0) throw InvalidInput("green_boundary: Im z != 0 required");
    const int L = model.block_size();
    if (z_bc.matrix.rows() != L || z_bc.matrix.cols() != L)
        throw InvalidInput("green_boundary: Z size mismatch");
    if (volume > 512) {
        CMatrix x = model.V(volume) - z_bc.matrix -
                    z * CMatrix::Identity(L, L);
        for (int k = volume - 1; k >= 1; --k) {
            CMatrix t = model.T(k + 1);
            x = model.V(k) - z * CMatrix::Identity(L, L) -
                t * checked_solve(x, t.adjoint(), "green_boundary: Schur sweep");
        }
        return checked_inverse(x, "green_boundary: final block");
    }
    Abcd blocks = abcd(transfer_product(model, volume, 0, z));
    const CMatrix& zm = z_bc.matrix;
    return checked_solve(blocks.a + zm * blocks.c, blocks.b + zm * blocks.d,
                         "green_boundary: bracket solve");
}

// Equivalent expression through the symplectic inverse: the blocks here
// are evaluated at the conjugate energy.
inline CMatrix green_boundary_conjugate_form(const BlockJacobiModel& model,
                                             int volume, Complex z,
                                             const BoundaryCondition& z_bc) {
    Abcd cj = abcd(transfer_product(model, volume, 0, std::conj(z)));
    const CMatrix& zm = z_bc.matrix;
    CMatrix denom = cj.c.adjoint() * zm + cj.a.adjoint();
    CMatrix numer = cj.d.adjoint() * zm + cj.b.adjoint();
    if (!is_invertible(denom))
        throw ConditioningError("green_boundary_conjugate_form: bracket singular");
    // numer * denom^{-1}
    return denom.transpose().fullPivLu().solve(numer.transpose()).transpose();
}

// Brute-force dense oracle: (n, m) block of (H_{Zhat,Z}^N - z)^{-1}.
inline CMatrix green_oracle(const BlockJacobiModel& model, int volume, Complex z,
                            const BoundaryCondition& zhat,
                            const BoundaryCondition& z_right, int n, int m) {
    if (volume < 1) throw InvalidInput("green_oracle: N >= 1 required");
    if (n < 1 || n > volume || m < 1 || m > volume)
        throw InvalidInput("green_oracle: block indices out of range");
    const int L = model.block_size();
    CMatrix h = detail::assemble_folded(model, volume, zhat.matrix, z_right.matrix);
    CMatrix shifted = h - z * CMatrix::Identity(h.rows(), h.cols());
    CMatrix rhs = CMatrix::Zero(h.rows(), L);
    rhs.block((m - 1) * L, 0, L, L) = CMatrix::Identity(L, L);
    CMatrix x = checked_solve(shifted, rhs, "green_oracle: resolvent solve");
    return x.block((n - 1) * L, 0, L, L);
}

// Solves (H_{Zhat,Z}^N - z) phi = psi by transfer-matrix propagation with
// the terminal constraint phi_{N+1} = 0.
inline std::vector<CMatrix> solve_inhomogeneous(const BlockJacobiModel& model,
                                                int volume, Complex z,
                                                const BoundaryCondition& zhat,
                                                const BoundaryCondition& z_right,
                                                const std::vector<CMatrix>& psi) {
    if (volume < 1) throw InvalidInput("solve_inhomogeneous: N >= 1 required");
    if (static_cast<int>(psi.size()) != volume)
        throw InvalidInput("solve_inhomogeneous: psi must have N entries");
    const int L = model.block_size();
    const CMatrix id = CMatrix::Identity(L, L);
    const CMatrix& zm = z_right.matrix;
    const CMatrix& zhm = zhat.matrix;

    // Row vectors M_k = [1, Z] T^z(N, k), accumulated backwards.
    CMatrix row(L, 2 * L);
    row.leftCols(L) = id;
    row.rightCols(L) = zm;
    CMatrix source = CMatrix::Zero(L, L);  // sum_k M_k (1;0) psi_k
    std::vector<CMatrix> row_top(volume + 1);
    for (int k = volume; k >= 1; --k) {
        source += row.leftCols(L) * psi[k - 1];
        row = row * transfer_step(model, k, z);
    }
    // Bracket [1, Z] T^z(N,0) (1; -Zhat)
    CMatrix bracket = row.leftCols(L) - row.rightCols(L) * zhm;
    CMatrix phi1 = -checked_solve(bracket, source, "solve_inhomogeneous: bracket");

    // Forward sweep: X_n = T_n^z X_{n-1} + (psi_n; 0), X_0 = (phi_1; -Zhat phi_1);
    // phi_n is the bottom block of X_n.
    CMatrix x(2 * L, L);
    x.topRows(L) = phi1;
    x.bottomRows(L) = -zhm * phi1;
    std::vector<CMatrix> phi;
    phi.reserve(volume);
    for (int n = 1; n <= volume; ++n) {
        x = transfer_step(model, n, z) * x;
        x.topRows(L) += psi[n - 1];
        phi.push_back(x.bottomRows(L));
    }
    return phi;
}

struct SpectralAtom {
    double energy = 0.0;
    CMatrix weight;  // L x L, PSD
};

struct SpectralMeasure {
    std::vector<SpectralAtom> atoms;

    CMatrix herglotz_sum(Complex z) const {
        if (atoms.empty()) throw InvalidInput("spectral measure is empty");
        const int L = static_cast<int>(atoms.front().weight.rows());
        CMatrix g = CMatrix::Zero(L, L);
        for (const auto& atom : atoms) g += atom.weight / (atom.energy - z);
        return g;
    }
};

// Finite-N matrix spectral measure at Hermitian right boundary xi:
// atoms at the eigenvalues of H^N(0, xi), weights from the site-1 blocks
// of the eigenvectors. Numerically degenerate eigenvalues are merged.
inline SpectralMeasure spectral_measure(const BlockJacobiModel& model, int volume,
                                        const BoundaryCondition& xi) {
    if (xi.kind != BoundaryKind::Hermitian)
        throw InvalidInput("spectral_measure: Hermitian boundary required");
    const int L = model.block_size();
    CMatrix h =
        assemble_hamiltonian(model, volume, BoundaryCondition::dirichlet(L), xi);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const RVector& ev = es.eigenvalues();
    const double width = ev(ev.size() - 1) - ev(0);
    const double gap = 1e-10 * (width > 0.0 ? width : 1.0);

    SpectralMeasure measure;
    Eigen::Index k = 0;
    while (k < ev.size()) {
        SpectralAtom atom;
        atom.energy = ev(k);
        atom.weight = CMatrix::Zero(L, L);
        Eigen::Index j = k;
        while (j < ev.size() && ev(j) - ev(k) <= gap) {
            CMatrix top = es.eigenvectors().col(j).head(L);
            atom.weight += top * top.adjoint();
            ++j;
        }
        // representative energy: mean of the merged cluster
        atom.energy = ev.segment(k, j - k).mean();
        measure.atoms.push_back(std::move(atom));
        k = j;
    }
    return measure;
}

}  // namespace weyljacobi
