// types.hpp — shared matrix aliases and small dense linear-algebra helpers.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace weyljacobi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

struct ConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operator 2-norm (largest singular value).
inline double op_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

inline double hermiticity_defect(const CMatrix& m) {
    return op_norm(m - m.adjoint());
}

inline bool is_hermitian(const CMatrix& m, double tol = 1e-12) {
    return hermiticity_defect(m) <= tol * (1.0 + op_norm(m));
}

inline CMatrix hermitize(const CMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

// Smallest / largest singular value pair.
inline std::pair<double, double> sv_extremes(const CMatrix& m) {
    auto sv = m.jacobiSvd().singularValues();
    return {sv(sv.size() - 1), sv(0)};
}

inline bool is_invertible(const CMatrix& m, double rel = 1e-12) {
    auto [lo, hi] = sv_extremes(m);
    return lo > rel * hi && hi > 0.0;
}

// Solve M X = B, refusing silently garbage answers for near-singular M.
inline CMatrix checked_solve(const CMatrix& m, const CMatrix& b,
                             const char* what = "linear solve") {
    auto [lo, hi] = sv_extremes(m);
    if (!(lo > 1e-14 * hi) || hi == 0.0)
        throw ConditioningError(std::string(what) + ": matrix numerically singular");
    return m.fullPivLu().solve(b);
}

inline CMatrix checked_inverse(const CMatrix& m, const char* what = "inverse") {
    return checked_solve(m, CMatrix::Identity(m.rows(), m.cols()), what);
}

// Inverse of a Hermitian definite matrix via eigenvalue reciprocals. Unlike
// an LU solve this stays meaningful at extreme condition numbers, which the
// solution Gram matrices reach by design.
inline CMatrix hermitian_definite_inverse(const CMatrix& m,
                                          const char* what = "hermitian inverse") {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m));
    const auto& ev = es.eigenvalues();
    RVector inv(ev.size());
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (ev(k) == 0.0)
            throw ConditioningError(std::string(what) + ": zero eigenvalue");
        inv(k) = 1.0 / ev(k);
    }
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

// Eigenvalues of a (numerically) Hermitian matrix, ascending.
inline RVector hermitian_eigenvalues(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m));
    return es.eigenvalues();
}

inline double min_eigenvalue(const CMatrix& m) {
    return hermitian_eigenvalues(m)(0);
}

inline bool is_psd(const CMatrix& m, double tol = 0.0) {
    return min_eigenvalue(m) >= -tol;
}

// Square root of a PSD Hermitian matrix; eigenvalue dust below
// 1e-13 * max (or below an optional absolute threshold) is clamped to zero.
inline CMatrix psd_sqrt(const CMatrix& m, double abs_cutoff = 0.0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m));
    RVector ev = es.eigenvalues();
    const double cutoff =
        std::max(abs_cutoff, 1e-13 * std::max(0.0, ev(ev.size() - 1)));
    RVector root(ev.size());
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        root(k) = ev(k) > cutoff ? std::sqrt(ev(k)) : 0.0;
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

// Rank of a Hermitian PSD matrix with an absolute eigenvalue threshold.
inline int psd_rank(const CMatrix& m, double threshold) {
    RVector ev = hermitian_eigenvalues(m);
    int r = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev(k) > threshold) ++r;
    return r;
}

// Orthogonal projection onto the span of eigenvectors of a Hermitian PSD
// matrix with eigenvalue <= threshold (its numerical kernel).
inline CMatrix kernel_projection(const CMatrix& m, double threshold) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m));
    CMatrix p = CMatrix::Zero(m.rows(), m.cols());
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
        if (std::abs(es.eigenvalues()(k)) <= threshold)
            p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    return p;
}

// Moore-Penrose pseudo-inverse with a relative singular-value threshold:
// invert on the numerical range, annihilate the numerical kernel.
inline CMatrix pinv(const CMatrix& m, double rel_threshold = 1e-8) {
    if (m.size() == 0) return m.adjoint();
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = rel_threshold * (sv.size() > 0 ? sv(0) : 0.0);
    RVector inv(sv.size());
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        inv(k) = sv(k) > cutoff ? 1.0 / sv(k) : 0.0;
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Inverse square root of a PSD matrix restricted to its numerical range.
inline CMatrix psd_inv_sqrt(const CMatrix& m, double rel_threshold = 1e-8) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m));
    RVector ev = es.eigenvalues();
    const double cutoff = rel_threshold * std::max(0.0, ev(ev.size() - 1));
    RVector root(ev.size());
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        root(k) = ev(k) > cutoff ? 1.0 / std::sqrt(ev(k)) : 0.0;
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

// Principal square root of c * M for PSD Hermitian M and complex scalar c,
// i.e. sqrt(c) * M^{1/2} with the principal branch of sqrt(c).
inline CMatrix scaled_psd_sqrt(Complex c, const CMatrix& m,
                               double abs_cutoff = 0.0) {
    return std::sqrt(c) * psd_sqrt(m, abs_cutoff);
}

}  // namespace weyljacobi
