#pragma once

#include <array>

#include "aniso_mhd/spectral.hpp"

namespace mhd {
namespace oracle {

// Independent brute-force references used by the tests and audits.  These
// deliberately share no numerical kernel with the code they validate beyond
// the inverse transform.

// rk_dt = 1e-5 puts the RK4 reference two digits past the 1e-8 acceptance
// tolerance; fd_h = 0 means the grid spacing.
struct OracleConfig {
    double fd_h = 0.0;
    double rk_dt = 1e-5;
    double tol = 1e-8;
};

// Centered O(h^2) stencils with periodic wrap, h = grid spacing; order 1..3.
PhysicalField fd_derivative(const PhysicalField& f, int axis, int order);

// Evaluate a band-limited field on a refined grid (zero-padded modes).
PhysicalField resample(const SpectralField& f, const GridSpec& fine);

// RK4 for the per-mode linear system
//   psi' = -v2,  v1' = -|xi|^2 v1 - xi1 xi2 psi,  v2' = -|xi|^2 v2 + xi1^2 psi.
struct ModeSolution {
    Complex psi, v1, v2;
};

ModeSolution mode_ode_solve(double xi1, double xi2, Complex psi0, Complex v10, Complex v20,
                            double t_end, double rk_dt);
ModeSolution mode_ode_solve(double xi1, double xi2, Complex psi0, Complex v10, Complex v20,
                            double t_end, const OracleConfig& cfg);

// Direct O(n^4) alias-free convolution of two small spectra, truncated to the
// 2/3 ball; grids larger than 8x8 are rejected.
SpectralField small_grid_convolution(const SpectralField& f, const SpectralField& g);

// Pointwise product of the listed fields summed with the grid measure.
double quadrature_integral(const std::vector<const PhysicalField*>& fields);

}  // namespace oracle
}  // namespace mhd
