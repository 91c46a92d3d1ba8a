#pragma once

// Exact angular integration over the sonic circle.
//
// On each sector of the circle x = x0 + r cos(theta), y = y0 + r sin(theta)
// lying in a single cell, a bilinear cell function is a trigonometric
// polynomial of degree 2 in theta. Products with the evolution kernels stay
// of degree <= 4, so every circle average is a finite sum of closed-form
// integrals of cos(n theta) and sin(n theta).

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "fveg/core.hpp"
#include "fveg/recovery.hpp"

namespace fveg {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct SonicCircle {
  Point2 center;
  double radius = 0.0;
};

/// Arc [begin, end) of the circle inside one cell.
struct Sector {
  double begin = 0.0;
  double end = 0.0;
  CellIndex cell;
};

struct SonicCircleTrace {
  SonicCircle circle;
  std::vector<Sector> sectors;  ///< sorted, covering [0, 2 pi)
};

/// Splits the circle at every crossing with a grid line. The cell of a
/// sector is the one containing the midpoint of its arc; a midpoint exactly
/// on a grid line goes to the cell with the smaller index. Throws
/// ConfigurationError if any arc leaves the ghost-padded domain.
SonicCircleTrace trace_sonic_circle(const SonicCircle& circle, const Grid& grid);

/// Cell containing coordinate value s along an axis, ties to the smaller
/// index.
int cell_coordinate(double s, double origin, double hbar);

enum class Kernel {
  one,
  cos,
  sin,
  cos_sq,
  sin_sq,
  sin_cos,
  sgn_cos,
  sgn_sin,
  cos_2theta,
  sin_2theta,
};

inline constexpr std::array<Kernel, 10> kAllKernels = {
    Kernel::one,     Kernel::cos,     Kernel::sin,        Kernel::cos_sq,    Kernel::sin_sq,
    Kernel::sin_cos, Kernel::sgn_cos, Kernel::sgn_sin, Kernel::cos_2theta, Kernel::sin_2theta};

std::string_view to_string(Kernel kernel);

/// a[n] cos(n theta) + b[n] sin(n theta), n = 0..4.
struct TrigPoly {
  static constexpr int kMaxDegree = 4;
  std::array<double, kMaxDegree + 1> a{};
  std::array<double, kMaxDegree + 1> b{};

  double operator()(double theta) const;
  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator*=(double s);
};

TrigPoly operator*(const TrigPoly& p, const TrigPoly& q);
TrigPoly operator+(TrigPoly p, const TrigPoly& q);
TrigPoly operator*(TrigPoly p, double s);

/// Kernel restricted to a piece of the circle on which sgn(cos) and
/// sgn(sin) are the given constants.
TrigPoly kernel_poly(Kernel kernel, double sgn_cos, double sgn_sin);

/// (1 / 2 pi) * integral over [t0, t1] of cos(n theta) and sin(n theta).
struct FourierIntegrals {
  std::array<double, TrigPoly::kMaxDegree + 1> c{};
  std::array<double, TrigPoly::kMaxDegree + 1> s{};
};

FourierIntegrals fourier_integrals(double t0, double t1);

/// Debug variant: the same integrals approximated with n_nodes uniform
/// nodes theta_k = (k + 1/2) 2 pi / n_nodes, keeping those in [t0, t1).
FourierIntegrals sampled_fourier_integrals(double t0, double t1, int n_nodes);

double integrate(const TrigPoly& p, const FourierIntegrals& f);

/// Image of a bilinear cell function on the circle, as a polynomial in
/// theta.
TrigPoly bilinear_on_circle(const CellBilinear& q, CellIndex cell, const SonicCircle& circle,
                            const Grid& grid);

/// Calls fn(t0, t1, cell, sgn_cos, sgn_sin) for each sector piece after
/// additionally splitting at the quadrant angles.
template <class Fn>
void for_each_piece(const SonicCircleTrace& trace, Fn&& fn) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  for (const Sector& s : trace.sectors) {
    double t0 = s.begin;
    while (t0 < s.end) {
      double boundary = (std::floor(t0 / half_pi) + 1.0) * half_pi;
      if (boundary <= t0) boundary += half_pi;
      const double t1 = std::min(s.end, boundary);
      const double mid = 0.5 * (t0 + t1);
      const double sc = std::cos(mid) >= 0.0 ? 1.0 : -1.0;
      const double ss = std::sin(mid) >= 0.0 ? 1.0 : -1.0;
      fn(t0, t1, s.cell, sc, ss);
      t0 = t1;
    }
  }
}

/// (1 / 2 pi) * closed-circle integral of data(theta) * kernel(theta), where
/// data on each sector is the bilinear `cell_data(cell)` of the sector's
/// cell. Exact up to round-off.
template <class CellDataFn>
double angular_moment(const SonicCircleTrace& trace, const Grid& grid, CellDataFn&& cell_data,
                      Kernel kernel) {
  double total = 0.0;
  for_each_piece(trace, [&](double t0, double t1, CellIndex cell, double sc, double ss) {
    const TrigPoly data = bilinear_on_circle(cell_data(cell), cell, trace.circle, grid);
    total += integrate(data * kernel_poly(kernel, sc, ss), fourier_integrals(t0, t1));
  });
  return total;
}

}  // namespace fveg
