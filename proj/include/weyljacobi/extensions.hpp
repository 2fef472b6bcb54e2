// extensions.hpp — maximal symmetric extensions parametrized by a partial
// isometry at an anchor energy, their Weyl points G_V^z, and the resolvent
// residual oracle that certifies a Green matrix without any
// infinite-dimensional machinery.
#pragma once

#include "weyljacobi/limits.hpp"
#include "weyljacobi/model.hpp"
#include "weyljacobi/types.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace weyljacobi {

inline constexpr double kRankThreshold = 1e-8;  // shared with the limits module

struct ExtensionSpec {
    Complex zeta;
    CMatrix v;               // partial isometry: range(P_+^zeta) -> range(P_+^zetabar)
    LimitData limit_zeta;
    LimitData limit_zetabar;
    TruncatedGram gram;      // (psi~^{D,zetabar})* psi~^{D,zeta}
    bool self_adjoint = false;
    bool equal_indices = true;
};

// Validates the von Neumann parameter and caches the anchor cross-Gram.
inline ExtensionSpec make_extension(const BlockJacobiModel& model, Complex zeta,
                                    const CMatrix& v,
                                    const std::vector<int>& schedule, double tol) {
    if (zeta.imag() <= 0.0) throw InvalidInput("make_extension: Im zeta > 0 required");
    const int L = model.block_size();
    if (v.rows() != L || v.cols() != L)
        throw InvalidInput("make_extension: V must be L x L");

    ExtensionSpec ext;
    ext.zeta = zeta;
    ext.v = v;
    ext.limit_zeta = limit_disc(model, zeta, schedule, tol);
    ext.limit_zetabar = limit_disc(model, std::conj(zeta), schedule, tol);
    if (!ext.limit_zeta.converged || !ext.limit_zetabar.converged)
        throw NotConverged("make_extension: limit data did not converge");
    if (ext.limit_zeta.n_z > ext.limit_zetabar.n_z)
        throw InvalidInput("make_extension: deficiency index at zeta exceeds the one at conj(zeta)");
    ext.equal_indices = ext.limit_zeta.n_z == ext.limit_zetabar.n_z;

    const CMatrix& pplus_z = ext.limit_zeta.pplus;
    const CMatrix& pplus_zb = ext.limit_zetabar.pplus;
    if (op_norm(v.adjoint() * v - pplus_z) > 1e-8)
        throw InvalidInput("make_extension: V*V must equal the projection at zeta");
    if (min_eigenvalue(CMatrix(pplus_zb - v * v.adjoint())) < -1e-8)
        throw InvalidInput("make_extension: VV* must be dominated by the projection at conj(zeta)");
    if (op_norm(CMatrix(v - pplus_zb * v * pplus_z)) > 1e-8)
        throw InvalidInput("make_extension: V must map between the projection ranges");
    ext.self_adjoint =
        ext.equal_indices && op_norm(v * v.adjoint() - pplus_zb) <= 1e-8;

    ext.gram = normalized_cross_gram(model, ext.limit_zetabar, ext.limit_zeta,
                                     schedule.back(), 1e-7);
    if (!ext.gram.converged)
        throw NotConverged("make_extension: anchor cross-Gram did not converge");
    if (op_norm(ext.gram.value) >= 1.0 - 1e-6)
        throw ConditioningError("make_extension: cross-Gram norm reached 1");
    return ext;
}

struct ExtensionWeylPoint {
    CMatrix w;  // partial isometry parameter at z
    CMatrix g;  // Green matrix G_V^z
    bool untested_unequal_branch = false;
};

// Explicit Weyl point of the extension at energy z: all Hilbert-space
// content enters through truncated cross-Gram matrices between normalized
// solutions; the rest is finite matrix algebra.
inline ExtensionWeylPoint extension_weyl_point(const BlockJacobiModel& model,
                                               const ExtensionSpec& ext, Complex z,
                                               const std::vector<int>& schedule,
                                               double tol) {
    if (z.imag() <= 0.0)
        throw InvalidInput("extension_weyl_point: Im z > 0 required");
    LimitData at_z = limit_disc(model, z, schedule, tol);
    LimitData at_zbar = limit_disc(model, std::conj(z), schedule, tol);
    if (!at_z.converged || !at_zbar.converged)
        throw NotConverged("extension_weyl_point: limit data did not converge");
    if (at_z.n_z > at_zbar.n_z)
        throw InvalidInput("extension_weyl_point: deficiency indices out of order at z");

    const int horizon = schedule.back();
    const CMatrix k_zbz = ext.gram.value;            // (psi~^{zetabar})* psi~^{zeta}
    const CMatrix k_zzb = k_zbz.adjoint();           // (psi~^{zeta})* psi~^{zetabar}
    auto gram = [&](const LimitData& a, const LimitData& b) {
        TruncatedGram g = normalized_cross_gram(model, a, b, horizon, 1e-7);
        if (!g.converged)
            throw NotConverged("extension_weyl_point: cross-Gram did not converge");
        return g.value;
    };
    const CMatrix k_zb_to_z = gram(ext.limit_zetabar, at_z);   // (psi~^{zetabar})* psi~^{z}
    const CMatrix k_z_to_z = gram(ext.limit_zeta, at_z);       // (psi~^{zeta})* psi~^{z}
    const CMatrix k_zb_to_zbar = gram(ext.limit_zetabar, at_zbar);
    const CMatrix k_z_to_zbar = gram(ext.limit_zeta, at_zbar);

    const CMatrix& v = ext.v;
    const CMatrix pperp = ext.limit_zetabar.pplus - v * v.adjoint();
    const CMatrix alpha = pinv(CMatrix(v.adjoint() - k_zzb), kRankThreshold);
    const CMatrix beta = pinv(CMatrix(v - k_zbz), kRankThreshold) * v;
    const CMatrix gamma =
        pinv(CMatrix(v - k_zbz), kRankThreshold) * v * k_zzb * pperp;

    // phi_perp* psi~^{D,w} for the spanning deficiency vectors.
    auto pairing = [&](const CMatrix& k_zb_w, const CMatrix& k_z_w) {
        return CMatrix(alpha.adjoint() * k_zb_w + beta.adjoint() * k_z_w +
                       pperp * k_zb_w - gamma.adjoint() * k_z_w);
    };
    const CMatrix at_upper = pairing(k_zb_to_z, k_z_to_z);
    const CMatrix at_lower = pairing(k_zb_to_zbar, k_z_to_zbar);

    const CMatrix iw_adj = pinv(at_lower, kRankThreshold) * at_upper;
    CMatrix w = -kI * iw_adj.adjoint();
    // confine W to the relevant projection ranges (it maps the conjugate
    // deficiency range into the upper one)
    w = at_z.pplus * w * at_zbar.pplus;

    ExtensionWeylPoint out;
    out.w = w;
    out.g = at_z.s_limit +
            psd_sqrt(at_z.r_limit) * w * psd_sqrt(CMatrix(-at_z.r_limit_conj));
    out.untested_unequal_branch = !ext.equal_indices;

    if (ext.self_adjoint) {
        const double defect = op_norm(w.adjoint() * w - at_zbar.pplus);
        if (defect > 1e-6)
            throw NotConverged("extension_weyl_point: W failed the isometry check");
    }
    return out;
}

struct ResolventResidual {
    double residual = 0.0;   // worst relative recurrence defect, site 1 included
    double tail = 0.0;       // estimate of sum_{n > horizon/2} ||phi_n||^2
    double slack = 0.0;      // min eig of i(G* - G) - 2|Im z| sum phi* phi
    bool diverged = false;
    int sites_used = 0;
};

// Certifies a candidate Green matrix G at energy z: phi = psi^{D,z} G -
// psi^{A,z} must solve (H - z) phi = pi_1 with square-summable tail. The
// iteration is truncated once the terms regrow from deep decay (rounding
// noise re-exciting the growing mode) and the tail is then extrapolated
// geometrically.
inline ResolventResidual resolvent_residual(const BlockJacobiModel& model,
                                            Complex z, const CMatrix& g,
                                            int horizon) {
    if (z.imag() == 0.0) throw InvalidInput("resolvent_residual: Im z != 0");
    if (horizon < 8) throw InvalidInput("resolvent_residual: horizon >= 8 required");
    const int L = model.block_size();
    if (g.rows() != L || g.cols() != L)
        throw InvalidInput("resolvent_residual: G must be L x L");
    const CMatrix id = CMatrix::Identity(L, L);
    const double scale0 = std::max(1.0, op_norm(g));

    std::vector<CMatrix> phi;
    phi.reserve(horizon + 1);
    phi.push_back(-id);  // phi_0 = psi_0^D G - psi_0^A = -1
    phi.push_back(g);    // phi_1 = G
    CMatrix gram = CMatrix::Zero(L, L);
    gram += g.adjoint() * g;
    double min_norm = std::numeric_limits<double>::infinity();
    int stop = horizon;
    ResolventResidual out;
    for (int n = 1; n < horizon; ++n) {
        CMatrix t_next = model.T(n + 1);
        CMatrix t_here = n == 1 ? id : model.T(n);
        CMatrix rhs = (z * id - model.V(n)) * phi[n] - t_here.adjoint() * phi[n - 1];
        phi.push_back(checked_solve(t_next, rhs, "resolvent_residual: T solve"));
        const double norm_next = phi.back().norm();
        if (gram.real().trace() > 1e100) {
            out.diverged = true;
            stop = n + 1;
            break;
        }
        if (norm_next > 100.0 * min_norm && min_norm < 1e-8 * scale0) {
            // regrowth out of deep decay: rounding noise, truncate here
            phi.pop_back();
            stop = n;
            break;
        }
        if (norm_next > 1e8 * scale0) {
            out.diverged = true;
            stop = n + 1;
            break;
        }
        min_norm = std::min(min_norm, std::max(norm_next, 1e-300));
        gram += phi.back().adjoint() * phi.back();
    }
    stop = std::min(stop, static_cast<int>(phi.size()) - 1);
    out.sites_used = stop;

    // Recurrence defect, relative to the local term scale: for geometric
    // coefficient growth the raw residual floor rises with the cancelled
    // magnitudes, so an absolute measure would be meaningless.
    double worst = 0.0;
    for (int n = 1; n < stop; ++n) {
        CMatrix t_next = model.T(n + 1);
        CMatrix t_here = n == 1 ? id : model.T(n);
        // site 1 has no left coupling; there the equation reads
        // T_2 phi_2 + V_1 phi_1 - z phi_1 = pi_1
        CMatrix lhs = t_next * phi[n + 1] + model.V(n) * phi[n] - z * phi[n];
        if (n == 1)
            lhs -= id;
        else
            lhs += t_here.adjoint() * phi[n - 1];
        const double local = std::max({1.0, (t_next * phi[n + 1]).norm(),
                                       phi[n].norm(), phi[n - 1].norm()});
        worst = std::max(worst, lhs.norm() / local);
    }
    out.residual = worst;

    // Tail over the second half, geometrically extrapolated past the
    // truncation point.
    double tail = 0.0;
    for (int n = horizon / 2 + 1; n <= stop; ++n) tail += phi[n].squaredNorm();
    if (stop < horizon && !out.diverged && stop >= 8) {
        const int back = std::max(2, stop / 4);
        const double num = phi[stop].norm();
        const double den = phi[stop - back].norm();
        double r = den > 0.0 ? std::pow(num / den, 1.0 / back) : 0.0;
        r = std::min(r, 0.99);
        double head = phi[stop].squaredNorm() * r * r / (1.0 - r * r);
        if (stop <= horizon / 2)
            head *= std::pow(r, 2.0 * (horizon / 2 - stop));
        tail += head;
    }
    out.tail = tail;

    out.slack = min_eigenvalue(
        CMatrix(kI * (g.adjoint() - g) * (z.imag() > 0 ? 1.0 : -1.0) -
                2.0 * std::abs(z.imag()) * gram));
    if (out.slack < -1e-6 * scale0 * scale0) out.diverged = true;
    return out;
}

}  // namespace weyljacobi
