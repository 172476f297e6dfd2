#pragma once

namespace coopemit {

enum class BesselKind { first, second };

// Cylindrical Bessel functions J_0, J_1 (first kind) and Y_0, Y_1 (second kind).
// First kind accepts x >= 0, second kind x > 0; otherwise std::domain_error.
double bessel(BesselKind kind, int order, double x);

inline double bessel_j0(double x) { return bessel(BesselKind::first, 0, x); }
inline double bessel_j1(double x) { return bessel(BesselKind::first, 1, x); }
inline double bessel_y0(double x) { return bessel(BesselKind::second, 0, x); }
inline double bessel_y1(double x) { return bessel(BesselKind::second, 1, x); }

} // namespace coopemit
