#pragma once

#include "ycalc/field.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/path.hpp"

namespace ycalc {

/// tau_y A(t, z) = int_0^t A(ds, z + y_s), sewn from the germ
/// A_{s,t}(z + y_s) pointwise in z.
///
/// Sewing works at the absolute resolution mesh * 2^-refine_levels: each grid
/// cell uses refine_levels dyadic levels, and a sub-interval of length
/// mesh * 2^-k uses refine_levels - k. Node values of eval are memoized per z.
/// increment(s, t, z) sews [s, t] directly, so it agrees with
/// eval(t, z) - eval(s, z) exactly at grid nodes and to the sewing tolerance
/// elsewhere. Spatial Jacobians are central differences with step
/// 1e-5 (1 + |z|).
FieldPtr averaged_translation(FieldPtr a, const Path& y, const Grid& grid, unsigned refine_levels);

}  // namespace ycalc
