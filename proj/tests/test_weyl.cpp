#include "weyljacobi/weyl.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace weyljacobi;

TEST(Wronskian, BasicAlgebra) {
    testutil::Rng rng(51);
    CMatrix phi = testutil::random_matrix(rng, 4, 2);
    CMatrix psi = testutil::random_matrix(rng, 4, 2);
    CMatrix w1 = wronskian(phi, psi);
    CMatrix w2 = wronskian(psi, phi);
    // (1/i) Phi* J Psi satisfies W(Phi,Psi)* = W(Psi,Phi) since (J/i)* = J/i.
    EXPECT_LT(op_norm(CMatrix(w1.adjoint() - w2)), 1e-13);
    // explicit 2x2 example: Phi = (1;0), Psi = (0;1) gives (1/i)(-1) = i
    CMatrix e1 = CMatrix::Zero(2, 1), e2 = CMatrix::Zero(2, 1);
    e1(0, 0) = 1.0;
    e2(1, 0) = 1.0;
    EXPECT_NEAR(std::abs(wronskian(e1, e2)(0, 0) - Complex(0, 1)), 0.0, 1e-15);
}

// Wronskians of two solutions at the same energy are site-independent.
TEST(Wronskian, ConstantAlongTheLattice) {
    testutil::Rng rng(52);
    for (int trial = 0; trial < 15; ++trial) {
        int L = 1 + static_cast<int>(rng() % 3);
        auto m = testutil::random_model(rng, L, 8);
        Complex z = testutil::random_complex(rng) + Complex(0, 1.0);
        SolutionPair sp = solutions(m, 7, z);
        // conj-z pair: W(psi^{zbar}, psi^z) is constant in n
        SolutionPair sp_c = solutions(m, 7, std::conj(z));
        CMatrix w0 = wronskian(sp_c.stacked_dirichlet(m, 0), sp.stacked_anti_dirichlet(m, 0));
        for (int n = 1; n <= 6; ++n) {
            CMatrix wn = wronskian(sp_c.stacked_dirichlet(m, n),
                                   sp.stacked_anti_dirichlet(m, n));
            EXPECT_LT(op_norm(CMatrix(wn - w0)), 1e-9 * (1.0 + op_norm(w0)));
        }
    }
}

TEST(QuadraticForm, AnchorFreeVolumeOne) {
    auto m = free_model(1);
    QuadraticForm q = quadratic_form(m, 1, Complex(0, 1));
    CMatrix expected(2, 2);
    expected << 2.0, Complex(0, 1), Complex(0, -1), 0.0;
    EXPECT_LT(op_norm(CMatrix(q.matrix - expected)), 1e-13);
}

// sigma Q_N grows monotonically in N for the Dirichlet form: each volume
// step adds 2 Im(z) times a PSD Gram term.
TEST(QuadraticForm, MonotoneInVolume) {
    testutil::Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        int L = 1 + static_cast<int>(rng() % 2);
        auto m = testutil::random_model(rng, L, 8);
        for (Complex z : {Complex(0.2, 1.0), Complex(0.2, -1.0)}) {
            CMatrix prev;
            for (int volume = 1; volume <= 6; ++volume) {
                QuadraticForm q = quadratic_form(m, volume, z);
                CMatrix signedq = static_cast<double>(q.sigma) * q.matrix;
                if (volume > 1)
                    EXPECT_GT(min_eigenvalue(CMatrix(signedq - prev)),
                              -1e-10 * (1.0 + op_norm(signedq)));
                prev = signedq;
            }
        }
    }
}

// Master identity: for G = G_N^z(Z) and the frame Phi_G = (-G; 1),
// Phi_G* Q_N^z Phi_G = -(CG - D)* . i(Z* - Z) . (CG - D).
TEST(QuadraticForm, MasterIdentityWithBoundaryGreen) {
    testutil::Rng rng(54);
    for (int trial = 0; trial < 30; ++trial) {
        int L = 1 + static_cast<int>(rng() % 3);
        int volume = 1 + static_cast<int>(rng() % 6);
        auto m = testutil::random_model(rng, L, volume + 1);
        Complex z = testutil::random_complex(rng, 0.5) + Complex(0, 1.0);
        CMatrix zb = testutil::random_upper_half(rng, L);
        CMatrix g = green_boundary(m, volume, z, BoundaryCondition::half_plane(zb));

        QuadraticForm q = quadratic_form(m, volume, z);
        CMatrix frame(2 * L, L);
        frame.topRows(L) = -g;
        frame.bottomRows(L) = CMatrix::Identity(L, L);
        CMatrix lhs = frame.adjoint() * q.matrix * frame;

        Abcd bl = abcd(transfer_product(m, volume, 0, z));
        CMatrix edge = bl.c * g - bl.d;
        CMatrix rhs = -edge.adjoint() * (kI * (zb.adjoint() - zb)) * edge;
        EXPECT_LT(op_norm(CMatrix(lhs - rhs)), 1e-8 * (1.0 + op_norm(lhs)))
            << "trial " << trial;
    }
}

TEST(Disc, AnchorFreeVolumeOne) {
    auto m = free_model(1);
    WeylDisc d = disc(m, 1, Complex(0, 1));
    EXPECT_NEAR(std::abs(d.center(0, 0) - Complex(0, 0.5)), 0.0, 1e-13);
    EXPECT_NEAR(d.radius_plus(0, 0).real(), 0.5, 1e-13);
    EXPECT_NEAR(d.radius_minus(0, 0).real(), 0.5, 1e-13);
}

TEST(Disc, RadiiArePositiveAndShrink) {
    testutil::Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        int L = 1 + static_cast<int>(rng() % 2);
        auto m = testutil::random_model(rng, L, 9);
        Complex z{0.1, 1.0};
        double prev = std::numeric_limits<double>::infinity();
        for (int volume = 1; volume <= 8; volume += 2) {
            WeylDisc d = disc(m, volume, z);
            EXPECT_GT(min_eigenvalue(d.radius_plus), -1e-12);
            EXPECT_GT(min_eigenvalue(d.radius_minus), -1e-12);
            double cur = op_norm(d.radius_plus);
            EXPECT_LE(cur, prev * (1.0 + 1e-10));
            prev = cur;
        }
    }
}

// For real coefficient models the disc data at conj(z) mirrors the data
// at z by entrywise conjugation.
TEST(Disc, RealModelConjugationSymmetry) {
    testutil::Rng rng(56);
    for (int trial = 0; trial < 10; ++trial) {
        int L = 1 + static_cast<int>(rng() % 2);
        auto m = testutil::random_model(rng, L, 7, /*real=*/true);
        Complex z{0.3, 1.2};
        WeylDisc d = disc(m, 6, z);
        WeylDisc dc = disc(m, 6, std::conj(z));
        EXPECT_LT(op_norm(CMatrix(dc.radius_plus + d.radius_plus.conjugate())),
                  1e-9 * (1.0 + op_norm(d.radius_plus)));
        EXPECT_LT(op_norm(CMatrix(dc.center - d.center.conjugate())),
                  1e-9 * (1.0 + op_norm(d.center)));
    }
}

// Hermitian boundary values land on the surface and the surface chart is
// invertible: W = R^{-1/2} (G - S) (-R^{zbar})^{-1/2} is unitary and
// surface_point(W) returns G.
TEST(Disc, SurfaceChartRoundTrip) {
    testutil::Rng rng(57);
    for (int trial = 0; trial < 20; ++trial) {
        int L = 1 + static_cast<int>(rng() % 3);
        int volume = 1 + static_cast<int>(rng() % 5);
        auto m = testutil::random_model(rng, L, volume + 1);
        Complex z = testutil::random_complex(rng, 0.4) + Complex(0, 1.0);
        CMatrix xi = testutil::random_hermitian(rng, L);
        CMatrix g = green_boundary(m, volume, z, BoundaryCondition::hermitian(xi));

        WeylDisc d = disc(m, volume, z);
        CMatrix w = psd_inv_sqrt(d.radius_plus) * (g - d.center) *
                    psd_inv_sqrt(d.radius_minus);
        EXPECT_LT(op_norm(CMatrix(w.adjoint() * w - CMatrix::Identity(L, L))), 1e-8)
            << "trial " << trial;
        // re-unitarize against rounding before feeding the strict chart
        Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
        CMatrix wu = svd.matrixU() * svd.matrixV().adjoint();
        CMatrix g2 = surface_point(d, wu);
        EXPECT_LT(op_norm(CMatrix(g2 - g)), 1e-8 * (1.0 + op_norm(g)));
    }
}

TEST(Membership, ThreeVerdicts) {
    testutil::Rng rng(58);
    for (int trial = 0; trial < 15; ++trial) {
        int L = 1 + static_cast<int>(rng() % 2);
        int volume = 2 + static_cast<int>(rng() % 4);
        auto m = testutil::random_model(rng, L, volume + 1);
        Complex z{0.1, 1.0};

        CMatrix xi = testutil::random_hermitian(rng, L);
        CMatrix g_surface =
            green_boundary(m, volume, z, BoundaryCondition::hermitian(xi));
        EXPECT_EQ(membership(m, volume, z, g_surface).verdict,
                  DiscMembership::Surface);

        CMatrix zb = testutil::random_upper_half(rng, L, /*strict=*/true);
        CMatrix g_inside =
            green_boundary(m, volume, z, BoundaryCondition::half_plane(zb));
        EXPECT_EQ(membership(m, volume, z, g_inside).verdict,
                  DiscMembership::Interior);

        WeylDisc d = disc(m, volume, z);
        CMatrix g_outside =
            d.center + 3.0 * (op_norm(d.radius_plus) + op_norm(d.radius_minus) + 1.0) *
                           CMatrix::Identity(L, L);
        EXPECT_EQ(membership(m, volume, z, g_outside).verdict,
                  DiscMembership::Exterior);
    }
}

// Nesting: every point of the volume-(N+1) surface lies in the closed
// volume-N disc.
TEST(Disc, SurfacesAreNested) {
    testutil::Rng rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        int L = 1 + static_cast<int>(rng() % 2);
        auto m = testutil::random_model(rng, L, 9);
        Complex z{-0.2, 1.0};
        for (int volume = 1; volume <= 7; ++volume) {
            WeylDisc deeper = disc(m, volume + 1, z);
            CMatrix w = testutil::random_unitary(rng, L);
            CMatrix g = surface_point(deeper, w);
            auto verdict = membership(m, volume, z, g).verdict;
            EXPECT_NE(verdict, DiscMembership::Exterior)
                << "trial " << trial << " N=" << volume;
        }
    }
}

TEST(Boundary, RecoveredImaginaryPartMatches) {
    testutil::Rng rng(60);
    // anchor: Hermitian xi has zero imaginary part
    {
        auto m = free_model(1);
        CMatrix g = green_boundary(m, 3, Complex(0, 1),
                                   BoundaryCondition::dirichlet(1));
        RecoveredBoundary rb = boundary_from_green(m, 3, Complex(0, 1), g);
        EXPECT_LT(op_norm(rb.imaginary_part), 1e-10);
    }
    // anchor: Z = i gives Y = i(Z* - Z) = 2
    {
        auto m = free_model(1);
        CMatrix zb = CMatrix::Constant(1, 1, Complex(0, 1));
        CMatrix g =
            green_boundary(m, 3, Complex(0, 1), BoundaryCondition::half_plane(zb));
        RecoveredBoundary rb = boundary_from_green(m, 3, Complex(0, 1), g);
        EXPECT_NEAR(rb.imaginary_part(0, 0).real(), 2.0, 1e-10);
        EXPECT_NEAR(std::abs(rb.canonical_z(0, 0) - Complex(0, 1)), 0.0, 1e-10);
    }
    // randomized: Y recovers i(Z* - Z) of the boundary matrix behind G
    for (int trial = 0; trial < 20; ++trial) {
        int L = 1 + static_cast<int>(rng() % 3);
        int volume = 2 + static_cast<int>(rng() % 5);
        auto m = testutil::random_model(rng, L, volume + 1);
        Complex z = testutil::random_complex(rng, 0.4) + Complex(0, 1.0);
        CMatrix zb = testutil::random_upper_half(rng, L);
        CMatrix g = green_boundary(m, volume, z, BoundaryCondition::half_plane(zb));
        RecoveredBoundary rb = boundary_from_green(m, volume, z, g);
        CMatrix y_true = kI * (zb.adjoint() - zb);
        EXPECT_LT(op_norm(CMatrix(rb.imaginary_part - y_true)),
                  1e-8 * (1.0 + op_norm(y_true)))
            << "trial " << trial;
    }
}

TEST(RadiusBound, HoldsAndControlsDiameter) {
    testutil::Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        int L = 1 + static_cast<int>(rng() % 2);
        int volume = 2 + static_cast<int>(rng() % 7);
        auto m = testutil::random_model(rng, L, volume + 1);
        Complex z{0.2, 1.1};
        RadiusBound rb = radius_bound(m, volume, z);
        WeylDisc d = disc(m, volume, z);
        EXPECT_LE(op_norm(d.radius_plus), rb.radius_bound * (1.0 + 1e-9));
        // sampled surface points stay within the diameter bound
        for (int k = 0; k < 5; ++k) {
            CMatrix g1 = surface_point(d, testutil::random_unitary(rng, L));
            CMatrix g2 = surface_point(d, testutil::random_unitary(rng, L));
            EXPECT_LE(op_norm(CMatrix(g1 - g2)), rb.diameter_bound * (1.0 + 1e-9));
        }
    }
}
