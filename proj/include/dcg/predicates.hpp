#pragma once

#include <complex>

namespace dcg {

using Point = std::complex<double>;

// Exact-sign geometric predicates. A floating-point filter answers most
// queries; the rest are decided in exact rational arithmetic.

/// +1 if a, b, c are counterclockwise, -1 if clockwise, 0 if collinear.
int orient2d(Point a, Point b, Point c);

/// +1 if d lies strictly inside the circle through the counterclockwise
/// triangle a, b, c; -1 if strictly outside; 0 if cocircular.
int incircle(Point a, Point b, Point c, Point d);

}  // namespace dcg
