#include "aniso_mhd/state.hpp"

#include <cmath>

namespace mhd {
namespace {

PhysicalField pointwise_product(const PhysicalField& a, const PhysicalField& b) {
    PhysicalField out(a.grid);
    for (std::size_t i = 0; i < out.val.size(); ++i) out.val[i] = a.val[i] * b.val[i];
    return out;
}

SpectralField to_spectral(const PhysicalField& f, bool apply_dealias) {
    SpectralField out = forward(f);
    if (apply_dealias) dealias_inplace(out);
    return out;
}

}  // namespace

QuadraticTerms quadratic_terms(const State& s, bool apply_dealias) {
    const PhysicalField v1 = inverse(s.v1);
    const PhysicalField v2 = inverse(s.v2);
    const PhysicalField p1 = inverse(derivative(s.psi, 1));
    const PhysicalField p2 = inverse(derivative(s.psi, 2));
    const PhysicalField d11 = inverse(derivative(s.v1, 1));
    const PhysicalField d12 = inverse(derivative(s.v2, 1));
    const PhysicalField d21 = inverse(derivative(s.v1, 2));
    const PhysicalField d22 = inverse(derivative(s.v2, 2));

    const GridSpec& g = s.grid();
    PhysicalField adv_psi(g), adv_v1(g), adv_v2(g), quad(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        adv_psi.val[i] = v1.val[i] * p1.val[i] + v2.val[i] * p2.val[i];
        adv_v1.val[i] = v1.val[i] * d11.val[i] + v2.val[i] * d21.val[i];
        adv_v2.val[i] = v1.val[i] * d12.val[i] + v2.val[i] * d22.val[i];
        quad.val[i] = d11.val[i] * d11.val[i] + 2.0 * d12.val[i] * d21.val[i] +
                      d22.val[i] * d22.val[i];
    }

    QuadraticTerms q;
    q.adv_psi = to_spectral(adv_psi, apply_dealias);
    q.adv_v1 = to_spectral(adv_v1, apply_dealias);
    q.adv_v2 = to_spectral(adv_v2, apply_dealias);
    q.quad = to_spectral(quad, apply_dealias);
    q.s11 = to_spectral(pointwise_product(p1, p1), apply_dealias);
    q.s12 = to_spectral(pointwise_product(p1, p2), apply_dealias);
    q.s22 = to_spectral(pointwise_product(p2, p2), apply_dealias);
    return q;
}

std::pair<PhysicalField, PhysicalField> magnetic_from_potential(const State& s) {
    PhysicalField b1 = inverse(derivative(s.psi, 2));
    for (double& v : b1.val) v += 1.0;
    PhysicalField b2 = inverse(derivative(s.psi, 1));
    for (double& v : b2.val) v = -v;
    return {std::move(b1), std::move(b2)};
}

namespace {

// T^ = (sum_ij d_i v_j d_j v_i + d_i d_j (d_i psi d_j psi))^ assembled from
// the dealiased products.
SpectralField assemble_source(const QuadraticTerms& q) {
    const GridSpec& g = q.quad.grid;
    SpectralField t(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            t.at(i1, i2) = q.quad.at(i1, i2) - x1 * x1 * q.s11.at(i1, i2) -
                           2.0 * x1 * x2 * q.s12.at(i1, i2) - x2 * x2 * q.s22.at(i1, i2);
        }
    }
    return t;
}

}  // namespace

SpectralField pressure_solve(const State& s) {
    const QuadraticTerms q = quadratic_terms(s);
    const SpectralField inv_t = inv_neg_laplacian(assemble_source(q));
    const GridSpec& g = s.grid();
    SpectralField p(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const Complex ixi2(0.0, g.xi2(i2));
            p.at(i1, i2) = -2.0 * ixi2 * s.psi.at(i1, i2) + inv_t.at(i1, i2);
        }
    }
    return p;
}

SpectralField nonlinear_F(const State& s) {
    SpectralField f = quadratic_terms(s).adv_psi;
    for (Complex& c : f.coef) c = -c;
    return f;
}

namespace {

RhsBundle assemble_rhs(const State& s, const QuadraticTerms& q) {
    const GridSpec& g = s.grid();
    const SpectralField inv_t = inv_neg_laplacian(assemble_source(q));

    RhsBundle rhs;
    rhs.F_hat = SpectralField(g);
    rhs.G1_hat = SpectralField(g);
    rhs.G2_hat = SpectralField(g);
    rhs.f2_hat = SpectralField(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const Complex ixi1(0.0, g.xi1(i1));
            const Complex ixi2(0.0, g.xi2(i2));
            const std::size_t i = g.idx(i1, i2);
            rhs.F_hat.coef[i] = -q.adv_psi.coef[i];
            const Complex f1 =
                -ixi1 * inv_t.coef[i] - (ixi1 * q.s11.coef[i] + ixi2 * q.s12.coef[i]);
            const Complex f2 =
                -ixi2 * inv_t.coef[i] - (ixi1 * q.s12.coef[i] + ixi2 * q.s22.coef[i]);
            rhs.f2_hat.coef[i] = f2;
            rhs.G1_hat.coef[i] = -q.adv_v1.coef[i] + f1;
            rhs.G2_hat.coef[i] = -q.adv_v2.coef[i] + f2;
        }
    }
    // Mean momentum input is zero for the continuum system; pin the rounding
    // residue of the advection mean.
    rhs.G1_hat.coef[0] = Complex(0.0, 0.0);
    rhs.G2_hat.coef[0] = Complex(0.0, 0.0);
    return rhs;
}

}  // namespace

std::pair<SpectralField, SpectralField> nonlinear_G(const State& s) {
    RhsBundle rhs = assemble_rhs(s, quadratic_terms(s));
    return {std::move(rhs.G1_hat), std::move(rhs.G2_hat)};
}

RhsBundle rhs_full(const State& s, bool apply_dealias) {
    return assemble_rhs(s, quadratic_terms(s, apply_dealias));
}

void enforce_state_invariants(State& s) {
    dealias_inplace(s.psi);
    dealias_inplace(s.v1);
    dealias_inplace(s.v2);
    project_divfree(s.v1, s.v2);
}

}  // namespace mhd
