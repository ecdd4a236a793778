#include <doctest.h>

#include <cmath>
#include <sstream>

#include "aniso_mhd/diagnostics.hpp"
#include "aniso_mhd/integrator.hpp"
#include "aniso_mhd/oracle.hpp"
#include "test_helpers.hpp"

using namespace mhd;
using namespace mhd::test;

TEST_CASE("snapshot: zero state, single-mode hand value, trilinear") {
    const GridSpec g = GridSpec::square(16, 8.0 * M_PI);
    const NormSnapshot z = snapshot(State(g));
    CHECK(z.h2_v == 0.0);
    CHECK(z.h2_grad_psi == 0.0);
    CHECK(z.l1xi_v == 0.0);
    CHECK(z.linf_grad_psi == 0.0);
    CHECK(z.trilinear == 0.0);

    // psi = eps sin(k.x) with k = (2, 1) on the 8 pi torus: xi = (0.5, 0.25)
    State s(g);
    const double eps = 0.3;
    s.psi.at_mode(2, 1) = Complex(0.0, -0.5 * eps);
    s.psi.at_mode(-2, -1) = Complex(0.0, 0.5 * eps);
    const NormSnapshot snap = snapshot(s);

    const double x1 = 0.5, x2 = 0.25;
    const double r2 = x1 * x1 + x2 * x2;
    const double w012 = 1.0 + r2 + (x1 * x1 * x1 * x1 + x1 * x1 * x2 * x2 + x2 * x2 * x2 * x2);
    const double coefsq = 0.25 * eps * eps;            // |psi^|^2 per mode
    const double hand = std::sqrt(2.0 * w012 * r2 * coefsq * g.area());
    CHECK(snap.h2_grad_psi == doctest::Approx(hand).epsilon(1e-13));

    // v2 = 0 kills the trilinear probe
    State sv(g);
    sv.psi = random_bandlimited(g, 7, 4);
    sv.v1 = random_bandlimited(g, 8, 4);
    // keep div v = 0 with v2 = 0: v1 must not depend on x1
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            if (g.k1(i1) != 0) sv.v1.at(i1, i2) = Complex(0.0, 0.0);
    CHECK(snapshot(sv).trilinear == 0.0);

    // trilinear against the quadrature oracle on a generic state
    const State r = random_state(g, 11, 4, 0.4);
    const PhysicalField d2v2 = inverse(derivative(r.v2, 2));
    const PhysicalField d23 = inverse(derivative(r.psi, 2, 3));
    const double want = oracle::quadrature_integral({&d2v2, &d23, &d23});
    CHECK(snapshot(r).trilinear == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("ledger: trapezoid integrals, monotone maxima, ordering") {
    NormSnapshot a;
    a.t = 0.0;
    a.h2_grad_v = 2.0;
    a.h2_v = 1.0;
    NormSnapshot b = a;
    b.t = 0.5;

    DiagnosticsLedger led;
    ledger_update(led, a);
    ledger_update(led, b);
    CHECK(led.int_h2_grad_v_sq == doctest::Approx(4.0 * 0.5).epsilon(1e-15));

    NormSnapshot c = b;
    c.t = 1.0;
    c.h2_v = 0.5;  // smaller: the max must not move
    ledger_update(led, c);
    CHECK(led.sup_h2_v == 1.0);

    NormSnapshot bad = c;
    bad.t = 0.25;
    CHECK_THROWS_AS(ledger_update(led, bad), std::invalid_argument);

    // replay of the stored history reproduces the integrals
    DiagnosticsLedger replay;
    for (const NormSnapshot& s : led.history) ledger_update(replay, s);
    CHECK(replay.int_h2_grad_v_sq == doctest::Approx(led.int_h2_grad_v_sq).epsilon(1e-12));
    CHECK(replay.sup_h2_v == led.sup_h2_v);
}

TEST_CASE("a-functionals: empties rejected, zero ledger, sqrt(T) scaling") {
    DiagnosticsLedger empty;
    CHECK_THROWS_AS(a1t(empty), std::invalid_argument);

    DiagnosticsLedger zeros;
    NormSnapshot z;
    ledger_update(zeros, z);
    CHECK(at(zeros) == 0.0);

    // constant norms: the integral terms scale as sqrt(T)
    auto build = [](double t_end) {
        DiagnosticsLedger led;
        for (int k = 0; k <= 100; ++k) {
            NormSnapshot s;
            s.t = t_end * k / 100.0;
            s.h2_grad_v = 3.0;
            s.l1xi_v = 2.0;
            ledger_update(led, s);
        }
        return led;
    };
    const DiagnosticsLedger l1 = build(1.0), l4 = build(4.0);
    CHECK(std::sqrt(l4.int_h2_grad_v_sq) ==
          doctest::Approx(2.0 * std::sqrt(l1.int_h2_grad_v_sq)).epsilon(1e-12));
    CHECK(a2t(l4) == doctest::Approx(2.0 * a2t(l1)).epsilon(1e-12));
}

TEST_CASE("a0: zero data, closed-form single pair, quadrature refinement") {
    const GridSpec g = GridSpec::square(16, 2.0 * M_PI);
    const A0Result zero = a0(State(g), 8.0, 0.01);
    CHECK(zero.total == 0.0);

    // psi pair at |xi| = 1, |psi^| = c: the heat-weighted term integrates to
    // (2 c unit)^2 / 2 in closed form (the velocity part is zero).
    State s(g);
    const double c = 0.25;
    s.psi.at_mode(1, 0) = Complex(c, 0.0);
    s.psi.at_mode(-1, 0) = Complex(c, 0.0);
    const A0Result res = a0(s, 14.0, 1.0 / 512.0);
    const double want_a2 = 2.0 * c * l1xi_unit(g) / std::sqrt(2.0);
    CHECK(res.a2_0 == doctest::Approx(want_a2).epsilon(1e-5));

    // |grad psi| = |xi||psi^| with H2 weight 3 at |xi| = 1
    const double want_a1 = std::sqrt(2.0 * 3.0 * c * c * g.area());
    CHECK(res.a1_0 == doctest::Approx(want_a1).epsilon(1e-13));

    // refinement stability on gaussian-like data
    const State r = random_state(GridSpec::square(32, 8.0 * M_PI), 3, 4, 0.01);
    const double coarse = a0(r, 16.0, 0.02).total;
    const double fine = a0(r, 16.0, 0.01).total;
    CHECK(std::abs(coarse - fine) <= 0.005 * fine);

    State bad = s;
    bad.v1.at_mode(0, 0) = Complex(1.0, 0.0);
    CHECK_THROWS_AS(a0(bad, 8.0, 0.01), std::domain_error);
}

TEST_CASE("interpolation ratio: closed form, scale invariance, zero denominator") {
    const GridSpec g = GridSpec::square(16, 2.0 * M_PI);

    auto ledger_for = [&](double amp) {
        State s(g);
        // psi = amp sin(x1 + x2)
        s.psi.at_mode(1, 1) = Complex(0.0, -0.5 * amp);
        s.psi.at_mode(-1, -1) = Complex(0.0, 0.5 * amp);
        DiagnosticsLedger led;
        for (int k = 0; k <= 20; ++k) {
            s.t = 0.1 * k;
            ledger_update(led, snapshot(s));
        }
        return led;
    };

    const auto r1 = interpolation_ratio(ledger_for(0.7));
    REQUIRE(r1.has_value());

    // closed form: |grad psi| = sqrt(2)|amp cos|, so Linf = sqrt(2) amp;
    // ||d1 grad psi||_{H1}^2 = 2 w1 xi1^2 |xi|^2 |c|^2 area with w1 = 3,
    // ||grad psi||_{H1}^2 = 2 w1 |xi|^2 |c|^2 area, both constant in time.
    const double amp = 0.7;
    const double area = g.area();
    const double num = std::sqrt(2.0) * amp;  // T^{1/4} factors cancel
    const double h1d1 = std::sqrt(2.0 * 3.0 * 1.0 * 2.0 * 0.25 * amp * amp * area);
    const double h1g = std::sqrt(2.0 * 3.0 * 2.0 * 0.25 * amp * amp * area);
    const double want = num / (std::sqrt(h1d1) * std::sqrt(h1g));
    CHECK(*r1 == doctest::Approx(want).epsilon(1e-12));

    const auto r2 = interpolation_ratio(ledger_for(1.4));
    REQUIRE(r2.has_value());
    CHECK(std::abs(*r1 - *r2) <= 1e-12 * *r1);

    // no xi1-content: denominator degenerates
    State s(g);
    s.psi.at_mode(0, 1) = Complex(0.0, -0.5);
    s.psi.at_mode(0, -1) = Complex(0.0, 0.5);
    DiagnosticsLedger led;
    for (int k = 0; k <= 5; ++k) {
        s.t = 0.1 * k;
        ledger_update(led, snapshot(s));
    }
    CHECK(!interpolation_ratio(led).has_value());
}

TEST_CASE("energy identity: zero state and linear single-mode convergence") {
    const GridSpec g = GridSpec::square(16, 8.0 * M_PI);
    const State z(g);
    CHECK(energy_identity_residual(z, rhs_full(z), z, z, 0.1) == 0.0);

    // single psi mode, linear flow: every nonlinear term vanishes so the
    // residual is pure centered-difference error, O(dt^2)
    auto residual_at = [&](double dt) {
        State s(g);
        s.psi.at_mode(1, 1) = Complex(0.3, 0.1);
        s.psi.at_mode(-1, -1) = Complex(0.3, -0.1);
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.nonlinear = false;
        Stepper st(g, cfg);
        const State s1 = st.step(s);
        const State s2 = st.step(s1);
        const State s3 = st.step(s2);
        const RhsBundle rhs = rhs_full(s2);
        CHECK(std::abs(energy_rhs(s2, rhs)) <= 1e-12);
        return energy_identity_residual(s2, rhs, s1, s3, dt);
    };
    const double ra = residual_at(0.02);
    const double rb = residual_at(0.01);
    CHECK(ra / rb == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("energy identity residual converges on a nonlinear trajectory") {
    const GridSpec g = GridSpec::square(32, 8.0 * M_PI);
    auto avg_residual = [&](double dt) {
        State s = random_state(g, 500, 4, 1e-2);
        StepperConfig cfg;
        cfg.dt = dt;
        Stepper st(g, cfg);
        State prev = s;
        State cur = st.step(prev);
        double sum = 0.0;
        int count = 0;
        const long n = std::lround(0.5 / dt);
        for (long k = 1; k < n; ++k) {
            State next = st.step(cur);
            sum += energy_identity_residual(cur, rhs_full(cur), prev, next, dt);
            ++count;
            prev = std::move(cur);
            cur = std::move(next);
        }
        return sum / count;
    };
    const double coarse = avg_residual(0.02);
    const double fine = avg_residual(0.01);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("region norms partition the l1xi norms") {
    const GridSpec g = GridSpec::square(32, 8.0 * M_PI);
    const State s = random_state(g, 601, 10, 0.3);
    const RegionNorms rn = region_norms(s);
    const double v_total = l1xi_norm_pair(s.v1, s.v2);
    const double psi_total = l1xi_norm(derivative(s.psi, 1));
    CHECK(rn.v[0] + rn.v[1] + rn.v[2] == doctest::Approx(v_total).epsilon(1e-12));
    CHECK(rn.d1psi[0] + rn.d1psi[1] + rn.d1psi[2] ==
          doctest::Approx(psi_total).epsilon(1e-12));

    // a field supported on |xi| >= 1 has empty low-frequency parts
    State hi(g);
    hi.psi.at_mode(8, 0) = Complex(1.0, 0.0);  // xi = (2, 0)
    hi.psi.at_mode(-8, 0) = Complex(1.0, 0.0);
    const RegionNorms rh = region_norms(hi);
    CHECK(rh.d1psi[static_cast<int>(RegionTag::LO_SMALL)] == 0.0);
    CHECK(rh.d1psi[static_cast<int>(RegionTag::LO_LARGE)] == 0.0);
    CHECK(rh.d1psi[static_cast<int>(RegionTag::HI)] > 0.0);
}

TEST_CASE("theorem audit: zero data bounded, ratios monotone data") {
    DiagnosticsLedger led;
    NormSnapshot z;
    ledger_update(led, z);
    const TheoremAuditReport zero = theorem_audit(led, 0.0, 10.0);
    CHECK(zero.bounded);
    CHECK(zero.final_ratio == 0.0);

    DiagnosticsLedger grow;
    for (int k = 0; k <= 10; ++k) {
        NormSnapshot s;
        s.t = 0.1 * k;
        s.h2_v = 1.0;
        s.h2_grad_v = 1.0;
        ledger_update(grow, s);
    }
    const TheoremAuditReport rep = theorem_audit(grow, 1.0, 10.0);
    CHECK(rep.final_ratio >= rep.max_ratio - 1e-14);  // A_T grows in T here
    CHECK(rep.bounded);
    CHECK(rep.tail_fraction_grad_v == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("ledger CSV has the fixed column order") {
    DiagnosticsLedger led;
    NormSnapshot s;
    s.t = 0.5;
    s.h2_v = 1.25;
    ledger_update(led, s);
    std::ostringstream os;
    write_csv(led, os);
    const std::string text = os.str();
    CHECK(text.find("t,h2_v,h2_grad_psi,h2_grad_v,h1_d1_grad_psi,linf_grad_psi,"
                    "l1xi_v,l1xi_d1psi,l1xi_v_hi,l1xi_d1psi_hi,l1xi_v_lo_small,"
                    "l1xi_d1psi_lo_small,l1xi_v_lo_large,l1xi_d1psi_lo_large,trilinear\n") == 0);
    CHECK(text.find("\n0.5,1.25,") != std::string::npos);
}
