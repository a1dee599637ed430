#pragma once

#include "m1gmg/mesh.hpp"

namespace m1gmg {

/// Full weighting restriction, the transpose of linear prolongation scaled
/// by 1/2^dim. 1D stencil (1/4, 1/2, 1/4) centered on the even fine cell;
/// 2D is the tensor product (9 points). Fine ghosts are filled per `mode`
/// before the stencil is applied, so boundary rows see BC-consistent data.
void restrict_field(Field& fine, GhostMode mode, Field& coarse);

/// Piecewise linear prolongation: even fine cells copy their coarse parent,
/// odd ones average the two (1D) or four (2D) nearest parents. Coarse ghosts
/// are filled per `mode` for the high-side rows.
void prolong_field(Field& coarse, GhostMode mode, Field& fine);

}  // namespace m1gmg
