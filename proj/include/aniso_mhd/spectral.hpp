#pragma once

#include <cstdint>
#include <optional>

#include "aniso_mhd/fft.hpp"
#include "aniso_mhd/grid.hpp"

namespace mhd {

// d^order/dx_axis^order as multiplication by (i xi_axis)^order.
SpectralField derivative(const SpectralField& f, int axis, int order = 1);

// (-Laplacian)^{-1}: divide by |xi|^2, zero mode mapped to 0.
SpectralField inv_neg_laplacian(const SpectralField& f);

// 2/3-rule truncation: zero modes with 3|k1| > n1 or 3|k2| > n2.  Idempotent.
SpectralField dealias(const SpectralField& f);
void dealias_inplace(SpectralField& f);
bool inside_dealias_ball(const GridSpec& g, int i1, int i2);

// Weight sum_{|alpha|=k} xi^{2 alpha} over distinct multi-indices
// (k = s if homogeneous, else summed over k = 0..s).
double sobolev_weight(double xi1, double xi2, int s, bool homogeneous);

// (f|g)_{H^s} (or Hdot^s): sum_xi w(xi) Re(f conj(g)) l1 l2, s in {0,1,2,3}.
double sobolev_inner(const SpectralField& f, const SpectralField& g, int s, bool homogeneous = false);
double sobolev_norm(const SpectralField& f, int s, bool homogeneous = false);

// Discrete surrogate of the L^1_xi norm of the continuum transform:
// sum over modes of |coef| * dxi1 * dxi2 * l1 * l2 / (2 pi)^2.
double l1xi_norm(const SpectralField& f);
double l1xi_norm(const SpectralField& f, RegionTag mask);
// Same surrogate applied to the pointwise Euclidean magnitude of a pair.
double l1xi_norm_pair(const SpectralField& f1, const SpectralField& f2);
double l1xi_norm_pair(const SpectralField& f1, const SpectralField& f2, RegionTag mask);
double l1xi_unit(const GridSpec& g);

// Per-mode membership of a region; the three masks partition the mode set.
std::vector<std::uint8_t> region_mask(const GridSpec& g, RegionTag tag);

// Leray projection v <- v - xi (xi.v)/|xi|^2 applied in place; the zero mode
// is forced to 0.  Divergences already at rounding level are left untouched,
// which makes the projection bitwise idempotent.
void project_divfree(SpectralField& v1, SpectralField& v2);

// Pseudo-spectral product: inverse both factors, multiply pointwise,
// transform back and truncate.  Exact for 2/3-band-limited inputs.
SpectralField spectral_product(const SpectralField& f, const SpectralField& g);

// Diagnostics helpers.
double max_divergence(const SpectralField& v1, const SpectralField& v2);
double coef_l2_norm(const SpectralField& f);
double coef_linf_norm(const SpectralField& f);
double hermitian_defect(const SpectralField& f);
bool all_finite(const SpectralField& f);

}  // namespace mhd
