#pragma once

#include "nusrecon/grid.hpp"

namespace nusrecon {

// Unitary 2D DFT, F X F^T with F_{kl} = exp(-2 pi i k l / n) / sqrt(n).
//
// The result is the average of the column-then-row and row-then-column
// evaluation orders. The two orders are transposes of each other, so the
// transform commutes with transposition bit-for-bit, not only up to rounding:
// ft2d(g^T) == ft2d(g)^T exactly, and a symmetric input gives an exactly
// symmetric output. Reconstruction iterates rely on this.
ComplexGrid ft2d(const ComplexGrid& g);

// Inverse of ft2d (F^H X conj(F)); same ordering guarantees.
ComplexGrid ift2d(const ComplexGrid& g);

}  // namespace nusrecon
