#pragma once

#include <utility>

#include "aniso_mhd/spectral.hpp"

namespace mhd {

// The evolving unknown (psi, v1, v2) in spectral form.  Invariants: all
// fields Hermitian, xi.v = 0 at every mode, velocity zero mode vanishes.
struct State {
    SpectralField psi, v1, v2;
    double t = 0.0;

    State() = default;
    explicit State(const GridSpec& g) : psi(g), v1(g), v2(g) {}
    const GridSpec& grid() const { return psi.grid; }
};

// Nonlinear forcing of the pressure-eliminated system: F drives the psi
// equation, (G1, G2) the velocity, f2 is the pressure-gradient-free part of
// the v2 forcing (G2 plus the advection term), kept for the energy audit.
struct RhsBundle {
    SpectralField F_hat;
    SpectralField G1_hat, G2_hat;
    SpectralField f2_hat;
};

// Dealiased quadratic products shared by the right-hand sides, the pressure
// solve and the energy audit.
struct QuadraticTerms {
    SpectralField adv_psi;           // (v.grad psi)^
    SpectralField adv_v1, adv_v2;    // (v.grad v)^
    SpectralField quad;              // (sum_ij d_i v_j d_j v_i)^
    SpectralField s11, s12, s22;     // (d_i psi d_j psi)^
};

QuadraticTerms quadratic_terms(const State& s, bool apply_dealias = true);

// b = (1 + d2 psi, -d1 psi) in physical space.
std::pair<PhysicalField, PhysicalField> magnetic_from_potential(const State& s);

// p = -2 d2 psi + (-Lap)^{-1} sum_ij [d_i v_j d_j v_i + d_i d_j (d_i psi d_j psi)],
// zero mean.
SpectralField pressure_solve(const State& s);

// F = -(v.grad psi), dealiased.
SpectralField nonlinear_F(const State& s);

// G = -v.grad v - sum grad (-Lap)^{-1}[...] - sum_j d_j[grad psi d_j psi];
// divergence-free by construction.
std::pair<SpectralField, SpectralField> nonlinear_G(const State& s);

RhsBundle rhs_full(const State& s, bool apply_dealias = true);

// Safeguards applied after construction and after every step: truncate,
// kill the velocity mean, reproject.
void enforce_state_invariants(State& s);

}  // namespace mhd
