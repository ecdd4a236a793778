#include <doctest.h>

#include <cmath>

#include "aniso_mhd/oracle.hpp"
#include "test_helpers.hpp"

using namespace mhd;
using namespace mhd::test;

TEST_CASE("forward: constant field is the DC mode") {
    const GridSpec g = GridSpec::square(16, 2.0 * M_PI);
    PhysicalField f(g);
    for (double& v : f.val) v = 1.0;
    const SpectralField fh = forward(f);
    CHECK(std::abs(fh.at_mode(0, 0) - Complex(1.0, 0.0)) < 1e-14);
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            if (i1 != 0 || i2 != 0) CHECK(std::abs(fh.at(i1, i2)) < 1e-14);
}

TEST_CASE("forward: single harmonic lands on the +-1 pair") {
    const GridSpec g = GridSpec::square(16, 2.0 * M_PI);
    PhysicalField f(g);
    for (int j1 = 0; j1 < g.n1; ++j1)
        for (int j2 = 0; j2 < g.n2; ++j2) f.at(j1, j2) = std::cos(g.x1(j1) * g.dxi1);
    const SpectralField fh = forward(f);
    CHECK(std::abs(fh.at_mode(1, 0) - Complex(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(fh.at_mode(-1, 0) - Complex(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(fh.at_mode(0, 0)) < 1e-14);
}

TEST_CASE("transform round trip and Parseval") {
    for (int n : {16, 12}) {  // 12 exercises the non-power-of-two path
        const GridSpec g = GridSpec::square(n, 8.0 * M_PI);
        const PhysicalField f = random_physical(g, 11 + n);
        const SpectralField fh = forward(f);
        const PhysicalField back = inverse(fh);
        double scale = 0.0;
        for (double v : f.val) scale = std::max(scale, std::abs(v));
        CHECK(max_val_diff(f, back) <= 1e-12 * scale);

        double phys = 0.0;
        for (double v : f.val) phys += v * v;
        phys *= g.cell_area();
        double spec = 0.0;
        for (const Complex& c : fh.coef) spec += std::norm(c);
        spec *= g.area();
        CHECK(phys == doctest::Approx(spec).epsilon(1e-10));

        CHECK(hermitian_defect(fh) < 1e-13);
    }
}

TEST_CASE("derivative: constants, exact harmonics") {
    const GridSpec g = GridSpec::square(16, 2.0 * M_PI);
    PhysicalField c(g);
    for (double& v : c.val) v = 3.5;
    CHECK(coef_linf_norm(derivative(forward(c), 2)) < 1e-14);

    PhysicalField s(g);
    for (int j1 = 0; j1 < g.n1; ++j1)
        for (int j2 = 0; j2 < g.n2; ++j2) s.at(j1, j2) = std::sin(g.x1(j1));
    const PhysicalField ds = inverse(derivative(forward(s), 1));
    for (int j1 = 0; j1 < g.n1; ++j1)
        for (int j2 = 0; j2 < g.n2; ++j2)
            CHECK(ds.at(j1, j2) == doctest::Approx(std::cos(g.x1(j1))).epsilon(1e-12));
}

TEST_CASE("derivative: third derivative matches finite differences at order h^2") {
    const GridSpec g = GridSpec::square(16, 8.0 * M_PI);
    const SpectralField f = random_bandlimited(g, 5, 2);
    const SpectralField d3 = derivative(f, 1, 3);

    double errs[2];
    int idx = 0;
    for (int nf : {128, 256}) {
        const GridSpec fine = GridSpec::square(nf, 8.0 * M_PI);
        const PhysicalField ff = oracle::resample(f, fine);
        const PhysicalField want = oracle::resample(d3, fine);
        const PhysicalField got = oracle::fd_derivative(ff, 1, 3);
        errs[idx++] = max_val_diff(want, got);
    }
    CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("derivative: mixed partials commute") {
    const GridSpec g = GridSpec::square(16, 8.0 * M_PI);
    const SpectralField f = random_bandlimited(g, 3, 4);
    const SpectralField a = derivative(derivative(f, 1), 2);
    const SpectralField b = derivative(derivative(f, 2), 1);
    CHECK(max_coef_diff(a, b) <= 1e-15 * coef_linf_norm(a));
}

TEST_CASE("inv_neg_laplacian: single modes and operator round trip") {
    const GridSpec g = GridSpec::square(16, 2.0 * M_PI);
    SpectralField f(g);
    f.at_mode(1, 0) = Complex(1.0, 0.0);
    CHECK(std::abs(inv_neg_laplacian(f).at_mode(1, 0) - Complex(1.0, 0.0)) < 1e-14);

    SpectralField h(g);
    h.at_mode(1, 1) = Complex(2.0, 0.0);
    CHECK(std::abs(inv_neg_laplacian(h).at_mode(1, 1) - Complex(1.0, 0.0)) < 1e-14);

    const SpectralField r = forward(random_physical(g, 3));
    const SpectralField inv = inv_neg_laplacian(r);
    // -Lap(inv(f)) = f - mean(f)
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            const Complex got = (x1 * x1 + x2 * x2) * inv.at(i1, i2);
            const Complex want = (i1 == 0 && i2 == 0) ? Complex(0.0, 0.0) : r.at(i1, i2);
            CHECK(std::abs(got - want) < 1e-13);
        }
    }
}

TEST_CASE("dealias: ball membership, Nyquist, idempotence") {
    const GridSpec g = GridSpec::square(12, 8.0 * M_PI);
    SpectralField f = random_bandlimited(g, 17, 4);  // |k| <= 4 = n/3: inside the ball
    const SpectralField once = dealias(f);
    CHECK(max_coef_diff(f, once) == 0.0);

    SpectralField nyq(g);
    nyq.at_mode(-6, 0) = Complex(1.0, 0.0);
    CHECK(coef_linf_norm(dealias(nyq)) == 0.0);

    SpectralField r = forward(random_physical(g, 23));
    const SpectralField d1 = dealias(r);
    const SpectralField d2 = dealias(d1);
    CHECK(max_coef_diff(d1, d2) == 0.0);
}

TEST_CASE("dealiased product equals direct convolution on an 8x8 grid") {
    const GridSpec g = GridSpec::square(8, 8.0 * M_PI);
    for (int seed = 0; seed < 5; ++seed) {
        const SpectralField f = random_bandlimited(g, 100 + seed, 2);
        const SpectralField h = random_bandlimited(g, 200 + seed, 2);
        const SpectralField fast = spectral_product(f, h);
        const SpectralField slow = oracle::small_grid_convolution(f, h);
        CHECK(max_coef_diff(fast, slow) <= 1e-12);
    }
}

TEST_CASE("sobolev_inner: Parseval, single-mode hand sum, quadrature oracle") {
    const GridSpec g = GridSpec::square(16, 8.0 * M_PI);

    const SpectralField f = random_bandlimited(g, 31, 4);
    const PhysicalField fp = inverse(f);
    double l2 = 0.0;
    for (double v : fp.val) l2 += v * v;
    l2 *= g.cell_area();
    CHECK(sobolev_inner(f, f, 0) == doctest::Approx(l2).epsilon(1e-12));

    // single Hermitian pair with |xi| = 1: (f|f)_{Hdot1} = |xi|^2 2|c|^2 l1 l2
    SpectralField s(g);
    const Complex c(0.3, 0.4);
    s.at_mode(4, 0) = c;  // xi = (1, 0) on the 8 pi torus
    s.at_mode(-4, 0) = std::conj(c);
    CHECK(sobolev_inner(s, s, 1, true) ==
          doctest::Approx(1.0 * 2.0 * std::norm(c) * g.area()).epsilon(1e-13));

    // H^2 inner against physical-space quadrature of sum_{|alpha|<=2} d^a f d^a g
    const SpectralField h = random_bandlimited(g, 37, 4);
    double quad = 0.0;
    const std::vector<std::pair<int, int>> alphas = {{0, 0}, {1, 0}, {0, 1},
                                                     {2, 0}, {1, 1}, {0, 2}};
    for (auto [a1, a2] : alphas) {
        SpectralField df = f, dh = h;
        if (a1 > 0) df = derivative(df, 1, a1);
        if (a2 > 0) df = derivative(df, 2, a2);
        if (a1 > 0) dh = derivative(dh, 1, a1);
        if (a2 > 0) dh = derivative(dh, 2, a2);
        const PhysicalField pf = inverse(df), ph = inverse(dh);
        quad += oracle::quadrature_integral({&pf, &ph});
    }
    CHECK(sobolev_inner(f, h, 2) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("l1xi_norm: zero, single pair, Gaussian against the analytic transform") {
    const GridSpec g = GridSpec::square(16, 8.0 * M_PI);
    CHECK(l1xi_norm(SpectralField(g)) == 0.0);

    SpectralField s(g);
    const double c = 0.7;
    s.at_mode(2, 1) = Complex(c, 0.0);
    s.at_mode(-2, -1) = Complex(c, 0.0);
    CHECK(l1xi_norm(s) == doctest::Approx(2.0 * c * l1xi_unit(g)).epsilon(1e-13));

    // exp(-|x|^2/sigma^2): the discrete surrogate of the continuum L1_xi
    // integral converges to the amplitude.
    const GridSpec gf = GridSpec::square(128, 8.0 * M_PI);
    PhysicalField gauss(gf);
    const double sigma = M_PI;
    for (int j1 = 0; j1 < gf.n1; ++j1) {
        for (int j2 = 0; j2 < gf.n2; ++j2) {
            const double dx1 = gf.x1(j1) - 0.5 * gf.l1;
            const double dx2 = gf.x2(j2) - 0.5 * gf.l2;
            gauss.at(j1, j2) = std::exp(-(dx1 * dx1 + dx2 * dx2) / (sigma * sigma));
        }
    }
    CHECK(l1xi_norm(forward(gauss)) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("region classification and masks partition the mode set") {
    CHECK(classify_region(2.0, 0.0) == RegionTag::HI);
    CHECK(classify_region(0.25, 0.5) == RegionTag::LO_SMALL);   // 0.25 <= 0.3125
    CHECK(classify_region(0.5, 0.1) == RegionTag::LO_LARGE);    // 0.5 > 0.26
    CHECK(classify_region(0.0, 0.0) == RegionTag::LO_SMALL);

    const GridSpec g = GridSpec::square(32, 8.0 * M_PI);
    const auto hi = region_mask(g, RegionTag::HI);
    const auto lo_s = region_mask(g, RegionTag::LO_SMALL);
    const auto lo_l = region_mask(g, RegionTag::LO_LARGE);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(hi[i] + lo_s[i] + lo_l[i] == 1);
}

TEST_CASE("project_divfree: gradients die, solenoidal fields survive") {
    const GridSpec g = GridSpec::square(16, 8.0 * M_PI);

    // pure gradient: v^ = i xi q^
    const SpectralField q = random_bandlimited(g, 41, 4);
    SpectralField g1 = derivative(q, 1), g2 = derivative(q, 2);
    project_divfree(g1, g2);
    CHECK(coef_linf_norm(g1) <= 1e-13);
    CHECK(coef_linf_norm(g2) <= 1e-13);

    auto [v1, v2] = random_solenoidal(g, 43, 4);
    SpectralField w1 = v1, w2 = v2;
    project_divfree(w1, w2);
    CHECK(max_coef_diff(v1, w1) <= 1e-14 * coef_linf_norm(v1));
    CHECK(max_coef_diff(v2, w2) <= 1e-14 * coef_linf_norm(v2));

    // random field: projected divergence at rounding level, idempotent bitwise
    SpectralField r1 = dealias(forward(random_physical(g, 47)));
    SpectralField r2 = dealias(forward(random_physical(g, 48)));
    project_divfree(r1, r2);
    const double vnorm = std::sqrt(coef_l2_norm(r1) * coef_l2_norm(r1) +
                                   coef_l2_norm(r2) * coef_l2_norm(r2));
    CHECK(max_divergence(r1, r2) <= 1e-12 * vnorm);
    SpectralField s1 = r1, s2 = r2;
    project_divfree(s1, s2);
    CHECK(max_coef_diff(r1, s1) == 0.0);
    CHECK(max_coef_diff(r2, s2) == 0.0);
    CHECK(hermitian_defect(r1) < 1e-13);
}

TEST_CASE("Hermitian symmetry survives the spectral operators") {
    // Band-limited fields: self-conjugate Nyquist modes cannot survive an
    // odd derivative, and all production fields live inside the 2/3 ball.
    const GridSpec g = GridSpec::square(16, 8.0 * M_PI);
    const SpectralField raw = forward(random_physical(g, 53));
    CHECK(hermitian_defect(dealias(raw)) < 1e-13);
    const SpectralField f = dealias(raw);
    CHECK(hermitian_defect(derivative(f, 1)) < 1e-13);
    CHECK(hermitian_defect(derivative(f, 2, 2)) < 1e-13);
    CHECK(hermitian_defect(inv_neg_laplacian(f)) < 1e-13);
}

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS_AS(GridSpec::square(7, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::square(6, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::square(16, 0.0), std::invalid_argument);
    const GridSpec a = GridSpec::square(16, 2.0 * M_PI);
    const GridSpec b = GridSpec::square(32, 2.0 * M_PI);
    SpectralField fa(a), fb(b);
    CHECK_THROWS_AS(sobolev_inner(fa, fb, 1), std::invalid_argument);
}
