// limits.hpp — N -> infinity analysis: limit radius/center operators,
// kernel projections, deficiency indices, operator classification,
// normalized square-summable solutions and limit Wronskians.
#pragma once

#include "weyljacobi/model.hpp"
#include "weyljacobi/transfer.hpp"
#include "weyljacobi/types.hpp"
#include "weyljacobi/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace weyljacobi {

enum class Classification { LimitPoint, CompletelyIndeterminate, Intermediate };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::LimitPoint: return "LimitPoint";
        case Classification::CompletelyIndeterminate: return "CompletelyIndeterminate";
        case Classification::Intermediate: return "Intermediate";
    }
    return "?";
}

struct ConvergenceStep {
    int volume = 0;
    double norm = 0.0;
    double increment = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceStep> steps;
    int n_used = 0;
    double last_increment = 0.0;
    bool converged = false;
};

namespace detail {

inline void validate_schedule(const std::vector<int>& schedule) {
    if (schedule.size() < 2)
        throw InvalidInput("schedule must contain at least two volumes");
    if (schedule.front() < 2)
        throw InvalidInput("schedule must start at N >= 2");
    for (size_t k = 1; k < schedule.size(); ++k)
        if (schedule[k] <= schedule[k - 1])
            throw InvalidInput("schedule must be strictly increasing");
}

// Solution Gram matrices sum_{n<=N} (psi_n)*(psi_n) of the combined
// (Dirichlet | anti-Dirichlet) columns, snapshotted along the schedule.
// Once the accumulated mass saturates the double range the sum is frozen:
// the corresponding radius operators are already indistinguishable from
// their limits at that point.
struct GramSnapshots {
    std::vector<CMatrix> grams;
    bool saturated = false;
};

inline GramSnapshots gram_snapshots(const BlockJacobiModel& model, Complex z,
                                    const std::vector<int>& schedule) {
    const int L = model.block_size();
    const CMatrix id = CMatrix::Identity(L, L);
    CMatrix row_prev(L, 2 * L), row(L, 2 * L);
    row_prev.leftCols(L) = CMatrix::Zero(L, L);  // psi_0^D = 0
    row_prev.rightCols(L) = id;                  // psi_0^A = 1
    row.leftCols(L) = id;                        // psi_1^D = 1
    row.rightCols(L) = CMatrix::Zero(L, L);      // psi_1^A = 0

    GramSnapshots out;
    CMatrix gram = CMatrix::Zero(2 * L, 2 * L);
    const int n_max = schedule.back();
    size_t next = 0;
    for (int n = 1; n <= n_max; ++n) {
        if (!out.saturated) {
            gram += row.adjoint() * row;
            if (row.norm() > 1e130 || gram.real().trace() > 1e200)
                out.saturated = true;
        }
        while (next < schedule.size() && schedule[next] == n) {
            out.grams.push_back(gram);
            ++next;
        }
        if (n == n_max) break;
        CMatrix t_next = model.T(n + 1);
        CMatrix t_here = n == 1 ? id : model.T(n);
        CMatrix rhs = (z * id - model.V(n)) * row - t_here.adjoint() * row_prev;
        row_prev.swap(row);
        row = checked_solve(t_next, rhs, "gram_snapshots: T solve");
    }
    if (out.grams.size() != schedule.size())
        throw InvalidInput("schedule volumes must be distinct and reachable");
    return out;
}

inline ConvergenceReport track_convergence(const std::vector<CMatrix>& values,
                                           const std::vector<int>& schedule,
                                           double tol) {
    ConvergenceReport rep;
    for (size_t k = 0; k < values.size(); ++k) {
        double inc = k == 0 ? std::numeric_limits<double>::infinity()
                            : op_norm(values[k] - values[k - 1]);
        rep.steps.push_back({schedule[k], op_norm(values[k]), inc});
    }
    rep.n_used = schedule.back();
    rep.last_increment = rep.steps.back().increment;
    rep.converged = rep.last_increment < tol;
    return rep;
}

}  // namespace detail

struct LimitData {
    Complex z;
    CMatrix r_limit;       // R^z (PSD for Im z > 0)
    CMatrix r_limit_conj;  // R^{zbar} (NSD for Im z > 0)
    CMatrix s_limit;       // S^z
    CMatrix p0;            // projection onto Ker(R^z)
    CMatrix pplus;         // 1 - p0
    int n_z = 0;
    int n_zbar = 0;
    Classification classification = Classification::LimitPoint;
    ConvergenceReport report_r, report_r_conj, report_s;
    double kernel_threshold = 0.0;
    bool rank_stable = true;
    bool converged = false;
    std::vector<CMatrix> r_history;  // R_N^z along the schedule

    int sigma() const { return z.imag() > 0.0 ? 1 : -1; }
};

// Limit radius/center operators along a doubling schedule, kernel
// projections and deficiency indices, and the resulting classification.
inline LimitData limit_disc(const BlockJacobiModel& model, Complex z,
                            const std::vector<int>& schedule, double tol) {
    if (z.imag() == 0.0) throw InvalidInput("limit_disc: Im z != 0 required");
    detail::validate_schedule(schedule);
    const int L = model.block_size();
    const CMatrix id = CMatrix::Identity(L, L);

    auto radii_centers = [&](Complex w) {
        detail::GramSnapshots snaps = detail::gram_snapshots(model, w, schedule);
        std::vector<CMatrix> r, s;
        for (const CMatrix& g : snaps.grams) {
            CMatrix r_n = hermitian_definite_inverse(
                CMatrix(2.0 * w.imag() * g.topLeftCorner(L, L)), "limit_disc: R");
            r.push_back(r_n);
            s.push_back(r_n * (kI * id + 2.0 * w.imag() * g.topRightCorner(L, L)));
        }
        return std::pair(std::move(r), std::move(s));
    };

    auto [r_seq, s_seq] = radii_centers(z);
    auto [r_conj_seq, s_conj_seq] = radii_centers(std::conj(z));
    (void)s_conj_seq;

    LimitData ld;
    ld.z = z;
    ld.r_history = r_seq;
    ld.r_limit = r_seq.back();
    ld.r_limit_conj = r_conj_seq.back();
    ld.s_limit = s_seq.back();
    ld.report_r = detail::track_convergence(r_seq, schedule, tol);
    ld.report_r_conj = detail::track_convergence(r_conj_seq, schedule, tol);
    ld.report_s = detail::track_convergence(s_seq, schedule, tol);
    ld.converged = ld.report_r.converged && ld.report_r_conj.converged &&
                   ld.report_s.converged;

    ld.kernel_threshold = std::max(1e-8 * op_norm(r_seq.front()), 1e-12);
    auto rank_at = [&](const std::vector<CMatrix>& seq, size_t k) {
        return psd_rank(CMatrix(seq[k] * (seq[k].trace().real() >= 0.0 ? 1.0 : -1.0)),
                        ld.kernel_threshold);
    };
    const size_t last = schedule.size() - 1;
    ld.n_z = rank_at(r_seq, last);
    ld.n_zbar = rank_at(r_conj_seq, last);
    ld.rank_stable = rank_at(r_seq, last - 1) == ld.n_z &&
                     rank_at(r_conj_seq, last - 1) == ld.n_zbar;
    if (!ld.rank_stable) ld.converged = false;

    const double sgn = ld.sigma();
    ld.p0 = kernel_projection(CMatrix(sgn * ld.r_limit), ld.kernel_threshold);
    ld.pplus = id - ld.p0;
    if (ld.n_z == 0 && ld.n_zbar == 0)
        ld.classification = Classification::LimitPoint;
    else if (ld.n_z == L && ld.n_zbar == L)
        ld.classification = Classification::CompletelyIndeterminate;
    else
        ld.classification = Classification::Intermediate;
    return ld;
}

struct LimitForm {
    Complex z;
    CMatrix pinf;      // 2L x 2L projection onto the divergent directions
    CMatrix qlimit;    // converged compression of Q_N^z onto range(1 - pinf)
    CMatrix pminus, pzero, pplus2L;
    int witt_index = 0;
    double zero_threshold = 0.0;
    bool converged = false;
    ConvergenceReport report_q;
};

// Limit of the quadratic forms Q_N^z: divergent directions are split off
// as the kernel of the limit of [2 Im(z) <psi|psi>_N]^{-1}; on the
// complement the form is accumulated per direction by iterating the
// recurrence on the compressed initial conditions. Forming (1-P)Q_N(1-P)
// from the full Q_N instead would cancel catastrophically once the
// divergent entries dwarf the bounded ones.
inline LimitForm limit_form(const BlockJacobiModel& model, Complex z,
                            const std::vector<int>& schedule, double tol) {
    if (z.imag() == 0.0) throw InvalidInput("limit_form: Im z != 0 required");
    detail::validate_schedule(schedule);
    const int L = model.block_size();
    const CMatrix id = CMatrix::Identity(L, L);
    const double sigma = z.imag() > 0.0 ? 1.0 : -1.0;

    detail::GramSnapshots snaps = detail::gram_snapshots(model, z, schedule);
    // Eigen-directions of the Gram are only trustworthy while the divergent
    // mass has not drowned the bounded one in rounding noise; restrict the
    // divergence diagnosis to that resolvable window.
    size_t resolvable = 0;
    for (size_t k = 0; k < snaps.grams.size(); ++k)
        if (snaps.grams[k].real().trace() <= 3e14) resolvable = k;
    if (resolvable < 1)
        throw NotConverged("limit_form: no resolvable schedule window");
    std::vector<CMatrix> q_snap;
    for (size_t k = 0; k <= resolvable; ++k)
        q_snap.push_back(hermitize(CMatrix((1.0 / kI) * j_matrix(L) +
                                           2.0 * z.imag() * snaps.grams[k])));

    LimitForm lf;
    lf.z = z;
    // A direction diverges when sigma * e* Q_N e keeps a growth factor of
    // at least 1.5 per doubling and has left its starting magnitude behind
    // by three orders. The floor is per direction: a global one would be
    // dominated by the divergent directions themselves.
    auto count_divergent = [&](size_t k, CMatrix* pinf_out) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(
            CMatrix(sigma * q_snap[k]));
        int count = 0;
        if (pinf_out) *pinf_out = CMatrix::Zero(2 * L, 2 * L);
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
            CVector e = es.eigenvectors().col(j);
            const double last = es.eigenvalues()(j);
            const double prev =
                sigma * (e.adjoint() * q_snap[k - 1] * e)(0, 0).real();
            const double first =
                sigma * (e.adjoint() * q_snap[0] * e)(0, 0).real();
            const bool grows = last >= 1.5 * std::max(prev, 1e-12) &&
                               last > 1e3 * (1.0 + std::abs(first)) && last > 1e3;
            if (grows) {
                ++count;
                if (pinf_out) *pinf_out += e * e.adjoint();
            }
        }
        return count;
    };
    const int dim_inf_found = count_divergent(resolvable, &lf.pinf);
    bool rank_stable =
        resolvable >= 2 && count_divergent(resolvable - 1, nullptr) == dim_inf_found;

    // Orthonormal split of C^{2L} into comp = range(1 - pinf) and the
    // divergent span.
    Eigen::SelfAdjointEigenSolver<CMatrix> es_p(lf.pinf);
    const int dim_inf = static_cast<int>(std::lround(lf.pinf.real().trace()));
    const int dim_comp = 2 * L - dim_inf;
    CMatrix basis(2 * L, dim_comp), basis_inf(2 * L, std::max(dim_inf, 1));
    int col = 0, col_inf = 0;
    for (Eigen::Index k = 0; k < es_p.eigenvalues().size(); ++k) {
        if (es_p.eigenvalues()(k) < 0.5)
            basis.col(col++) = es_p.eigenvectors().col(k);
        else
            basis_inf.col(col_inf++) = es_p.eigenvectors().col(k);
    }
    if (col != dim_comp || col_inf != dim_inf)
        throw ConditioningError("limit_form: projection split failed");

    // rho_n = (psi_n^D, psi_n^A) B obeys the same recurrence as psi; the
    // comp columns stay bounded (their accumulated form converges), the
    // divergent columns must visibly blow up.
    const int n_max = schedule.back();
    CMatrix rho_prev(L, dim_comp), rho(L, dim_comp);
    rho_prev = basis.bottomRows(L);  // psi_0 = (0 | 1)
    rho = basis.topRows(L);          // psi_1 = (1 | 0)
    CMatrix rho_inf_prev = basis_inf.leftCols(dim_inf).bottomRows(L).eval();
    CMatrix rho_inf = basis_inf.leftCols(dim_inf).topRows(L).eval();

    CMatrix acc = CMatrix::Zero(dim_comp, dim_comp);
    std::vector<CMatrix> q_comp_seq;
    double inf_mass = 0.0;
    bool inf_overflow = false;
    double min_term = std::numeric_limits<double>::infinity();
    const double term_scale = std::max(rho.squaredNorm() + rho_prev.squaredNorm(), 1.0);
    bool truncated = false;
    size_t next = 0;
    const CMatrix j_small =
        hermitize(CMatrix(basis.adjoint() * ((1.0 / kI) * j_matrix(L)) * basis));
    for (int n = 1; n <= n_max; ++n) {
        if (!truncated) {
            const double term = rho.squaredNorm();
            // contamination guard: regrowth after deep decay is the growing
            // mode re-entering through rounding noise, not the true solution
            if (term > 100.0 * min_term && min_term < 1e-12 * term_scale)
                truncated = true;
            else {
                acc += rho.adjoint() * rho;
                min_term = std::min(min_term, std::max(term, 1e-300));
            }
        }
        if (dim_inf > 0 && !inf_overflow) {
            inf_mass += rho_inf.squaredNorm();
            if (inf_mass > 1e100) inf_overflow = true;
        }
        while (next < schedule.size() && schedule[next] == n) {
            q_comp_seq.push_back(
                hermitize(CMatrix(j_small + 2.0 * z.imag() * acc)));
            ++next;
        }
        if (n == n_max) break;
        CMatrix t_next = model.T(n + 1);
        CMatrix t_here = n == 1 ? id : model.T(n);
        CMatrix zv = z * id - model.V(n);
        CMatrix rhs = zv * rho - t_here.adjoint() * rho_prev;
        rho_prev.swap(rho);
        rho = checked_solve(t_next, rhs, "limit_form: T solve");
        if (dim_inf > 0 && !inf_overflow) {
            CMatrix rhs_i = zv * rho_inf - t_here.adjoint() * rho_inf_prev;
            rho_inf_prev.swap(rho_inf);
            rho_inf = checked_solve(t_next, rhs_i, "limit_form: T solve");
        }
    }

    const double q_floor = 1e6 * (1.0 + op_norm(q_comp_seq.front()));
    bool divergence_ok =
        dim_inf == 0 || inf_overflow ||
        2.0 * std::abs(z.imag()) * inf_mass > q_floor;

    lf.report_q = detail::track_convergence(q_comp_seq, schedule, tol);
    CMatrix q_small = q_comp_seq.back();
    lf.qlimit = basis * q_small * basis.adjoint();
    lf.converged = lf.report_q.converged && rank_stable && divergence_ok;

    lf.zero_threshold = 1e-8 * std::max(1.0, op_norm(q_small));
    Eigen::SelfAdjointEigenSolver<CMatrix> es_q(q_small);
    lf.pminus = CMatrix::Zero(2 * L, 2 * L);
    lf.pzero = CMatrix::Zero(2 * L, 2 * L);
    lf.pplus2L = CMatrix::Zero(2 * L, 2 * L);
    for (Eigen::Index k = 0; k < es_q.eigenvalues().size(); ++k) {
        CVector w = basis * es_q.eigenvectors().col(k);
        CMatrix proj = w * w.adjoint();
        const double lambda = es_q.eigenvalues()(k);
        if (lambda < -lf.zero_threshold)
            lf.pminus += proj;
        else if (lambda > lf.zero_threshold)
            lf.pplus2L += proj;
        else
            lf.pzero += proj;
    }

    LimitData ld = limit_disc(model, z, schedule, tol);
    lf.witt_index = static_cast<int>(std::lround(lf.pzero.real().trace())) +
                    std::min(ld.n_z, ld.n_zbar);
    if (!ld.converged) lf.converged = false;
    return lf;
}

// Right normalization factor ((z - zbar) R^z)^{1/2}, the principal square
// root realized as sqrt(2 i |Im z|) * (sigma R^z)^{1/2}. Directions inside
// the numerical kernel of R are annihilated outright: their residual
// magnitude is saturation noise, not signal, and keeping it would make the
// normalized solution grow instead of vanish.
inline CMatrix normalization_factor(const LimitData& ld) {
    const double im = std::abs(ld.z.imag());
    return scaled_psd_sqrt(Complex(0.0, 2.0 * im),
                           CMatrix(static_cast<double>(ld.sigma()) * ld.r_limit),
                           ld.kernel_threshold);
}

struct NormalizedSolution {
    std::vector<CMatrix> values;  // index n -> psi~_n^{D,z}, n = 0..horizon
    CMatrix gram;                 // truncated sum (psi~)* psi~, targets P_+^z
    double gram_last_increment = 0.0;
    bool gram_converged = false;
};

// psi~^{D,z} = psi^{D,z} ((z - zbar) R^z)^{1/2}: the square-summable
// normalized Dirichlet solution. Sites where the raw solution has left the
// floating-point range contribute nothing (the factor annihilates the
// growing directions) and are emitted as zero.
inline NormalizedSolution normalized_solution(const BlockJacobiModel& model,
                                              const LimitData& ld, int horizon,
                                              double tol = 1e-6) {
    if (!ld.converged)
        throw NotConverged("normalized_solution: limit data is not converged");
    if (horizon < 4) throw InvalidInput("normalized_solution: horizon >= 4 required");
    const int L = model.block_size();
    const CMatrix id = CMatrix::Identity(L, L);
    const CMatrix factor = normalization_factor(ld);

    NormalizedSolution out;
    out.values.reserve(horizon + 1);
    CMatrix gram = CMatrix::Zero(L, L);
    CMatrix gram_half;
    CMatrix psi_prev = CMatrix::Zero(L, L), psi = id;  // psi_0^D, psi_1^D
    bool dead = false;
    out.values.push_back(psi_prev * factor);
    for (int n = 1; n <= horizon; ++n) {
        CMatrix tilde = dead ? CMatrix(CMatrix::Zero(L, L)) : CMatrix(psi * factor);
        out.values.push_back(tilde);
        gram += tilde.adjoint() * tilde;
        if (n == horizon / 2) gram_half = gram;
        if (n == horizon) break;
        if (!dead) {
            CMatrix t_next = model.T(n + 1);
            CMatrix t_here = n == 1 ? id : model.T(n);
            CMatrix rhs = (ld.z * id - model.V(n)) * psi - t_here.adjoint() * psi_prev;
            psi_prev.swap(psi);
            psi = checked_solve(t_next, rhs, "normalized_solution: T solve");
            if (psi.norm() > 1e150 && tilde.norm() < 1e-100) dead = true;
        }
    }
    out.gram = hermitize(gram);
    out.gram_last_increment = op_norm(gram - gram_half);
    out.gram_converged = out.gram_last_increment < tol;
    return out;
}

enum class LimitPairing {
    NormalizedSame,           // (psi~^{D,z}, psi~^{D,z})        -> (z - zbar) P_+^z
    NormalizedCross,          // (psi~^{D,z}, psi~^{D,zbar})     -> 0
    AntiWithNormalized,       // (psi^{A,z},  psi~^{D,z})
    AntiWithNormalizedConj    // (psi^{A,z},  psi~^{D,zbar})
};

struct LimitWronskian {
    CMatrix value;
    bool converged = false;
    double last_increment = 0.0;
};

// Large-n limit of the sesquilinear pairing Phi* J Psi evaluated on
// stacked solution frames; convergence judged across the last doubling.
inline LimitWronskian limit_wronskian(const BlockJacobiModel& model,
                                      const LimitData& at_z,
                                      const LimitData& at_zbar,
                                      LimitPairing which, int horizon) {
    if (!at_z.converged || !at_zbar.converged)
        throw NotConverged("limit_wronskian: limit data is not converged");
    if (std::abs(at_zbar.z - std::conj(at_z.z)) > 1e-14)
        throw InvalidInput("limit_wronskian: second limit must sit at conj(z)");
    if (horizon < 4) throw InvalidInput("limit_wronskian: horizon >= 4 required");
    const int L = model.block_size();
    const CMatrix j = j_matrix(L);
    const CMatrix f_z = normalization_factor(at_z);
    const CMatrix f_zbar = normalization_factor(at_zbar);

    SolutionPair sol_z = solutions(model, horizon, at_z.z);
    SolutionPair sol_zbar = solutions(model, horizon, std::conj(at_z.z));

    auto frame = [&](int n) -> std::pair<CMatrix, CMatrix> {
        CMatrix a, b;
        switch (which) {
            case LimitPairing::NormalizedSame:
                a = sol_z.stacked_dirichlet(model, n) * f_z;
                b = a;
                break;
            case LimitPairing::NormalizedCross:
                a = sol_z.stacked_dirichlet(model, n) * f_z;
                b = sol_zbar.stacked_dirichlet(model, n) * f_zbar;
                break;
            case LimitPairing::AntiWithNormalized:
                a = sol_z.stacked_anti_dirichlet(model, n);
                b = sol_z.stacked_dirichlet(model, n) * f_z;
                break;
            case LimitPairing::AntiWithNormalizedConj:
                a = sol_z.stacked_anti_dirichlet(model, n);
                b = sol_zbar.stacked_dirichlet(model, n) * f_zbar;
                break;
        }
        if (!a.allFinite() || !b.allFinite())
            throw NotConverged("limit_wronskian: solution frame overflowed");
        return {std::move(a), std::move(b)};
    };

    auto [a_half, b_half] = frame(horizon / 2);
    auto [a_full, b_full] = frame(horizon);
    CMatrix w_half = a_half.adjoint() * j * b_half;
    CMatrix w_full = a_full.adjoint() * j * b_full;

    LimitWronskian out;
    out.value = w_full;
    out.last_increment = op_norm(w_full - w_half);
    out.converged = out.last_increment < 1e-6 * (1.0 + op_norm(w_full));
    return out;
}

struct TruncatedGram {
    CMatrix value;
    double last_increment = 0.0;
    bool converged = false;
    int horizon = 0;
};

// Truncated l2 inner product sum_n (psi~_n^{D,a})* psi~_n^{D,b} between
// the normalized solutions at two energies, with a doubling convergence
// check. These Gram matrices are all the Hilbert-space input the explicit
// extension construction needs.
inline TruncatedGram normalized_cross_gram(const BlockJacobiModel& model,
                                           const LimitData& at_a,
                                           const LimitData& at_b, int horizon,
                                           double tol = 1e-7) {
    if (!at_a.converged || !at_b.converged)
        throw NotConverged("normalized_cross_gram: limit data is not converged");
    if (horizon < 4) throw InvalidInput("normalized_cross_gram: horizon >= 4");
    const int L = model.block_size();
    const CMatrix id = CMatrix::Identity(L, L);
    const CMatrix fa = normalization_factor(at_a);
    const CMatrix fb = normalization_factor(at_b);

    CMatrix pa_prev = CMatrix::Zero(L, L), pa = id;
    CMatrix pb_prev = CMatrix::Zero(L, L), pb = id;
    CMatrix gram = CMatrix::Zero(L, L), gram_half = CMatrix::Zero(L, L);
    bool dead_a = false, dead_b = false;
    for (int n = 1; n <= horizon; ++n) {
        CMatrix ta = dead_a ? CMatrix(CMatrix::Zero(L, L)) : CMatrix(pa * fa);
        CMatrix tb = dead_b ? CMatrix(CMatrix::Zero(L, L)) : CMatrix(pb * fb);
        gram += ta.adjoint() * tb;
        if (n == horizon / 2) gram_half = gram;
        if (n == horizon) break;
        auto advance = [&](CMatrix& prev, CMatrix& cur, Complex w, bool& dead,
                           const CMatrix& tilde) {
            if (dead) return;
            CMatrix t_next = model.T(n + 1);
            CMatrix t_here = n == 1 ? id : model.T(n);
            CMatrix rhs = (w * id - model.V(n)) * cur - t_here.adjoint() * prev;
            prev.swap(cur);
            cur = checked_solve(t_next, rhs, "normalized_cross_gram: T solve");
            if (cur.norm() > 1e150 && tilde.norm() < 1e-100) dead = true;
        };
        advance(pa_prev, pa, at_a.z, dead_a, ta);
        advance(pb_prev, pb, at_b.z, dead_b, tb);
    }
    if (!gram.allFinite())
        throw NotConverged("normalized_cross_gram: accumulation overflowed");

    TruncatedGram out;
    out.value = gram;
    out.last_increment = op_norm(gram - gram_half);
    out.converged = out.last_increment < tol;
    out.horizon = horizon;
    return out;
}

}  // namespace weyljacobi
