#pragma once

#include "aniso_mhd/grid.hpp"

namespace mhd {

// Forward transform with the 1/(n1*n2) normalization fixed in GridSpec's
// contract; inverse is its exact inverse (imaginary residue of a Hermitian
// spectrum is dropped).  Plans are cached per grid size and created with
// FFTW_ESTIMATE so results are reproducible run to run.
SpectralField forward(const PhysicalField& f);
PhysicalField inverse(const SpectralField& f);

}  // namespace mhd
