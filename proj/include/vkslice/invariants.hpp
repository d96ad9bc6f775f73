#pragma once

#include <map>

#include "vkslice/gauss_diagram.hpp"
#include "vkslice/laurent_poly.hpp"

namespace vkslice {

/// ind(x) = r+ - r- - l+ + l-, where r (l) counts arrows crossing x from its
/// left to its right (right to left) with x drawn pointing downwards. Arcs
/// are read counterclockwise, so the left side of x is the arc running from
/// its tail to its head.
int index(const GaussDiagram& d, int chord);

/// ind(x) for every chord, keyed by chord id.
std::map<int, int> indices(const GaussDiagram& d);

int odd_writhe(const GaussDiagram& d);
LaurentPoly writhe_polynomial(const GaussDiagram& d);
LaurentPoly henrich_turaev(const GaussDiagram& d);

int writhe(const GaussDiagram& d);

/// Unnormalized Kauffman bracket in the variable A, with <unknot> = 1.
LaurentPoly kauffman_bracket(const GaussDiagram& d);

/// Writhe-normalized bracket f = (-A^3)^(-w) <D>.
LaurentPoly f_polynomial(const GaussDiagram& d);

/// Circles left after the oriented smoothing of every chord.
int seifert_circles(const GaussDiagram& d);

/// (n - r + 1) / 2 for one-signed diagrams.
int dkk_slice_genus(const GaussDiagram& d);

/// True iff the graded form of the flattened diagram vanishes identically.
bool is_flat_planar(const GaussDiagram& d);

}  // namespace vkslice
