// acceptance.cpp — end-to-end checks over the whole library, one summary
// line per criterion. Exits nonzero if any criterion fails.
#include "weyljacobi/weyljacobi.hpp"

#include "test_util.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace weyljacobi;

namespace {

int g_failures = 0;

void report(const char* tag, bool ok, const std::string& detail) {
    std::printf("%s %s%s%s\n", tag, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++g_failures;
}

std::vector<int> doubling(int first, int last) {
    std::vector<int> s;
    for (int n = first; n <= last; n *= 2) s.push_back(n);
    return s;
}

const std::vector<Complex> kProbes = {Complex(0, 1), Complex(0, 2),
                                      Complex(1, 1), Complex(0, -1)};

// A1: boundary Green matrices against the dense resolvent oracle on a
// broad randomized sweep.
void criterion_a1() {
    testutil::Rng rng(101);
    int checked = 0;
    double worst = 0.0;
    bool ok = true;
    std::string detail;
    try {
        for (int trial = 0; trial < 220; ++trial) {
            int L = 1 + static_cast<int>(rng() % 4);
            int volume = 1 + static_cast<int>(rng() % 10);
            auto m = testutil::random_model(rng, L, volume + 1);
            Complex z = kProbes[trial % kProbes.size()];
            CMatrix xi = testutil::random_hermitian(rng, L);
            auto bc = BoundaryCondition::hermitian(xi);
            CMatrix g = green_boundary(m, volume, z, bc);
            CMatrix oracle = green_oracle(m, volume, z,
                                          BoundaryCondition::dirichlet(L), bc, 1, 1);
            double err = op_norm(CMatrix(g - oracle)) / (1.0 + op_norm(oracle));
            worst = std::max(worst, err);
            if (err > 1e-9) ok = false;
            ++checked;
        }
        detail = std::to_string(checked) + " instances, worst relative error " +
                 std::to_string(worst);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("A1", ok && checked >= 200, detail);
}

// A2: structural identities of the transfer calculus — the conjugation
// identity for one-step inverses, product factorization, and the Moebius
// form of the boundary Green matrix.
void criterion_a2() {
    testutil::Rng rng(102);
    int checked = 0;
    bool ok = true;
    std::string detail;
    try {
        for (int trial = 0; trial < 120; ++trial) {
            int L = 1 + static_cast<int>(rng() % 3);
            int volume = 2 + static_cast<int>(rng() % 6);
            auto m = testutil::random_model(rng, L, volume + 1);
            Complex z = kProbes[trial % kProbes.size()];
            CMatrix j = j_matrix(L);

            CMatrix step = transfer_step(m, 2, z);
            CMatrix inv_candidate =
                -j * transfer_step(m, 2, std::conj(z)).adjoint() * j;
            if (op_norm(CMatrix(step * inv_candidate -
                                CMatrix::Identity(2 * L, 2 * L))) >
                1e-9 * (1.0 + op_norm(step)))
                ok = false;

            CMatrix whole = transfer_product(m, volume, 0, z).matrix;
            CMatrix split = transfer_product(m, volume, 1, z).matrix *
                            transfer_product(m, 1, 0, z).matrix;
            if (op_norm(CMatrix(whole - split)) > 1e-9 * (1.0 + op_norm(whole)))
                ok = false;

            CMatrix xi = testutil::random_hermitian(rng, L);
            CMatrix g = green_boundary(m, volume, z,
                                       BoundaryCondition::hermitian(xi));
            MoebiusMap t(whole);
            CMatrix via_map = -inverse_moebius(CMatrix(-xi), t);
            if (op_norm(CMatrix(g - via_map)) > 1e-9 * (1.0 + op_norm(g)))
                ok = false;
            ++checked;
        }
        detail = std::to_string(checked) + " instances";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("A2", ok && checked >= 100, detail);
}

// A3: quadratic form — exact small anchor, monotone growth of the signed
// form in the volume, and the surface bound for Hermitian boundary points.
void criterion_a3() {
    testutil::Rng rng(103);
    bool ok = true;
    std::string detail;
    try {
        QuadraticForm q0 = quadratic_form(free_model(1), 1, Complex(0, 1));
        CMatrix anchor(2, 2);
        anchor << 2.0, Complex(0, 1), Complex(0, -1), 0.0;
        if (op_norm(CMatrix(q0.matrix - anchor)) > 1e-12) ok = false;

        for (int trial = 0; trial < 25; ++trial) {
            int L = 1 + static_cast<int>(rng() % 2);
            auto m = testutil::random_model(rng, L, 8);
            Complex z = kProbes[trial % kProbes.size()];
            CMatrix prev;
            for (int volume = 1; volume <= 6; ++volume) {
                QuadraticForm q = quadratic_form(m, volume, z);
                CMatrix signedq = static_cast<double>(q.sigma) * q.matrix;
                if (volume > 1 &&
                    min_eigenvalue(CMatrix(signedq - prev)) <
                        -1e-10 * (1.0 + op_norm(signedq)))
                    ok = false;
                prev = signedq;
            }
            CMatrix xi = testutil::random_hermitian(rng, L);
            CMatrix g = green_boundary(m, 5, z, BoundaryCondition::hermitian(xi));
            MembershipResult mem = membership(m, 5, z, g);
            if (mem.verdict != DiscMembership::Surface) ok = false;
        }
        detail = "anchor, monotonicity, surface bound";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("A3", ok, detail);
}

// A4: circle geometry — exact scalar anchor, boundary points sit at the
// exact radius, and the discs are nested in the volume.
void criterion_a4() {
    testutil::Rng rng(104);
    bool ok = true;
    std::string detail;
    try {
        WeylDisc d0 = disc(free_model(1), 1, Complex(0, 1));
        if (std::abs(d0.center(0, 0) - Complex(0, 0.5)) > 1e-12 ||
            std::abs(d0.radius_plus(0, 0) - 0.5) > 1e-12)
            ok = false;

        // scalar circle: |G(xi) - S|^2 = R^z * (-R^{zbar}) for every xi
        auto m = geometric_model(2.0);
        Complex z{0, 1};
        WeylDisc d = disc(m, 6, z);
        const double rr =
            d.radius_plus(0, 0).real() * d.radius_minus(0, 0).real();
        for (int k = 0; k < 50; ++k) {
            CMatrix xi = testutil::random_hermitian(rng, 1, 3.0);
            CMatrix g = green_boundary(m, 6, z, BoundaryCondition::hermitian(xi));
            const double dist2 = std::norm(g(0, 0) - d.center(0, 0));
            if (std::abs(dist2 - rr) > 1e-12 * (1.0 + rr)) ok = false;
        }

        for (int trial = 0; trial < 5; ++trial) {
            int L = 1 + static_cast<int>(rng() % 2);
            auto mm = testutil::random_model(rng, L, 10);
            for (int volume = 1; volume <= 8; ++volume) {
                WeylDisc deeper = disc(mm, volume + 1, z);
                CMatrix g = surface_point(deeper, testutil::random_unitary(rng, L));
                if (membership(mm, volume, z, g).verdict == DiscMembership::Exterior)
                    ok = false;
            }
        }
        detail = "anchor, 50 boundary samples, nesting N=1..8";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("A4", ok, detail);
}

// A5: a priori radius and diameter bounds on randomized instances.
void criterion_a5() {
    testutil::Rng rng(105);
    bool ok = true;
    std::string detail;
    try {
        for (int trial = 0; trial < 40; ++trial) {
            int L = 1 + static_cast<int>(rng() % 3);
            int volume = 2 + static_cast<int>(rng() % 9);
            auto m = testutil::random_model(rng, L, volume + 1);
            Complex z{0.1, 1.0 + 0.5 * (trial % 3)};
            RadiusBound rb = radius_bound(m, volume, z);
            WeylDisc d = disc(m, volume, z);
            if (op_norm(d.radius_plus) > rb.radius_bound * (1.0 + 1e-9)) ok = false;
            CMatrix g1 = surface_point(d, testutil::random_unitary(rng, L));
            CMatrix g2 = surface_point(d, testutil::random_unitary(rng, L));
            if (op_norm(CMatrix(g1 - g2)) > rb.diameter_bound * (1.0 + 1e-9))
                ok = false;
        }
        detail = "40 instances";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("A5", ok, detail);
}

// A6: classification and index bookkeeping across the three behaviours.
void criterion_a6() {
    bool ok = true;
    std::string detail;
    try {
        const auto k_long = doubling(4, 512);
        const auto k_short = doubling(4, 64);
        // the mixed family's growing channel exhausts double-precision
        // conditioning past N ~ 40; it converges long before that
        const std::vector<int> k_mixed = {4, 8, 16, 32, 40};

        LimitData lp = limit_disc(free_model(1), Complex(0, 1), k_long, 1e-6);
        if (!lp.converged || lp.classification != Classification::LimitPoint ||
            lp.n_z != 0 || lp.n_zbar != 0)
            ok = false;

        LimitData ci = limit_disc(geometric_model(2.0), Complex(0, 1), k_short, 1e-8);
        if (!ci.converged ||
            ci.classification != Classification::CompletelyIndeterminate ||
            ci.n_z != 1 || ci.n_zbar != 1)
            ok = false;

        LimitData in = limit_disc(block_mixed_model(2.0), Complex(0, 1), k_mixed, 1e-6);
        if (!in.converged || in.classification != Classification::Intermediate ||
            in.n_z != 1 || in.n_zbar != 1)
            ok = false;

        LimitForm lf_free = limit_form(free_model(1), Complex(0, 1), k_long, 1e-6);
        if (!lf_free.converged || lf_free.witt_index != 1 ||
            std::lround(lf_free.pinf.real().trace()) != 1 ||
            std::lround(lf_free.pzero.real().trace()) != 1)
            ok = false;
        LimitForm lf_geo =
            limit_form(geometric_model(2.0), Complex(0, 1), k_short, 1e-6);
        if (!lf_geo.converged || lf_geo.witt_index != 1 ||
            std::lround(lf_geo.pinf.real().trace()) != 0 ||
            std::lround(lf_geo.pminus.real().trace()) != 1 ||
            std::lround(lf_geo.pplus2L.real().trace()) != 1)
            ok = false;

        // second probe energy agrees
        if (limit_disc(free_model(1), Complex(0, 2), k_long, 1e-6).classification !=
                Classification::LimitPoint ||
            limit_disc(geometric_model(2.0), Complex(0, 2), k_short, 1e-6)
                    .classification != Classification::CompletelyIndeterminate ||
            limit_disc(block_mixed_model(2.0), Complex(0, 2), k_mixed, 1e-6)
                    .classification != Classification::Intermediate)
            ok = false;
        detail = "three families at two probe energies, index bookkeeping";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("A6", ok, detail);
}

// A7: deep-volume stability — at N = 2000 the half-line Green matrix is
// boundary-condition independent to 1e-6 and matches the limit center.
void criterion_a7() {
    bool ok = true;
    std::string detail;
    try {
        auto m = free_model(1);
        Complex z{0, 1};
        LimitData ld = limit_disc(m, z, doubling(4, 512), 1e-6);
        for (double xi_val : {0.0, 5.0}) {
            CMatrix xi = CMatrix::Constant(1, 1, Complex(xi_val, 0.0));
            CMatrix g = green_boundary(m, 2000, z, BoundaryCondition::hermitian(xi));
            if (std::abs(g(0, 0) - ld.s_limit(0, 0)) > 1e-6) ok = false;
        }
        detail = "N = 2000, boundary values 0 and 5 vs the limit center";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("A7", ok, detail);
}

// A8: explicit extension resolvents — anchor isometry, recurrence
// residuals, Herglotz sign, and injectivity of the parameter.
void criterion_a8() {
    bool ok = true;
    std::string detail;
    try {
        auto geo = geometric_model(2.0);
        const auto k_short = doubling(4, 64);
        const Complex zeta{0, 1};
        std::vector<Complex> values;
        for (double theta : {0.0, M_PI / 2, M_PI}) {
            CMatrix v = CMatrix::Constant(1, 1, std::exp(kI * theta));
            ExtensionSpec ext = make_extension(geo, zeta, v, k_short, 1e-8);
            ExtensionWeylPoint pt = extension_weyl_point(geo, ext, zeta, k_short, 1e-8);
            if (op_norm(CMatrix(pt.w + kI * v.adjoint())) > 1e-6) ok = false;
            values.push_back(pt.g(0, 0));

            for (Complex z : {zeta, Complex(0.3, 1.2)}) {
                ExtensionWeylPoint at =
                    extension_weyl_point(geo, ext, z, k_short, 1e-8);
                ResolventResidual rr = resolvent_residual(geo, z, at.g, 64);
                if (rr.diverged || rr.residual > 1e-6 || rr.tail > 1e-6) ok = false;
                CMatrix im = kI * (at.g.adjoint() - at.g);
                if (min_eigenvalue(im) < -1e-9) ok = false;
            }
        }
        for (size_t a = 0; a < values.size(); ++a)
            for (size_t b = a + 1; b < values.size(); ++b)
                if (std::abs(values[a] - values[b]) <= 1e-6) ok = false;
        detail = "three extension parameters, residuals and Herglotz sign";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("A8", ok, detail);
}

// A9: finite-volume spectral measures — normalization and Herglotz
// reconstruction of the boundary Green matrix.
void criterion_a9() {
    testutil::Rng rng(109);
    bool ok = true;
    std::string detail;
    try {
        for (int trial = 0; trial < 25; ++trial) {
            int L = 1 + static_cast<int>(rng() % 3);
            int volume = 2 + static_cast<int>(rng() % 11);
            auto m = testutil::random_model(rng, L, volume + 1);
            CMatrix xi = testutil::random_hermitian(rng, L);
            auto bc = BoundaryCondition::hermitian(xi);
            SpectralMeasure mu = spectral_measure(m, volume, bc);
            CMatrix total = CMatrix::Zero(L, L);
            for (const auto& atom : mu.atoms) total += atom.weight;
            if (op_norm(CMatrix(total - CMatrix::Identity(L, L))) > 1e-10) ok = false;
            for (Complex z : {Complex(0.3, 1.0), Complex(-0.7, -1.2)}) {
                CMatrix g = green_boundary(m, volume, z, bc);
                if (op_norm(CMatrix(g - mu.herglotz_sum(z))) >
                    1e-9 * (1.0 + op_norm(g)))
                    ok = false;
            }
        }
        detail = "25 instances, normalization 1e-10, reconstruction 1e-9";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report("A9", ok, detail);
}

}  // namespace

int main() {
    criterion_a1();
    criterion_a2();
    criterion_a3();
    criterion_a4();
    criterion_a5();
    criterion_a6();
    criterion_a7();
    criterion_a8();
    criterion_a9();
    return g_failures == 0 ? 0 : 1;
}
