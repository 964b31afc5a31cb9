#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ycalc/sewing.hpp"

namespace ycalc {

/// A named germ with the defect exponent it is checked at (never above the
/// exponent it actually has).
struct CatalogGerm {
  std::string name;
  double beta = 2.0;
  Germ germ;
};

/// Twenty germs on [0, 1] with defect exponents 1.3, 1.6 or 2: smooth
/// Riemann-type germs, product, averaged and smooth fields along rough
/// paths, and Young germs y_s x_{s,t}. Rough data use Weierstrass and fBm
/// paths sampled on a grid of 2^17 cells, so any base grid of at most
/// 1024 cells refines without leaving the sampled resolution. `seed`
/// selects the fBm drivers.
std::vector<CatalogGerm> germ_catalog(std::uint64_t seed = 7);

/// Sorted catalog names.
std::vector<std::string> germ_catalog_names();

}  // namespace ycalc
