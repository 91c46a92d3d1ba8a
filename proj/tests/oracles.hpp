#pragma once

// Brute-force reference evaluations shared by the unit tests and the
// acceptance binary. Everything here works pointwise on a uniform angular
// grid and looks up the cell of each quadrature point directly, so it shares
// no code path with the closed-form sector integration.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "fveg/angular.hpp"
#include "fveg/evolution.hpp"
#include "fveg/recovery.hpp"

namespace oracle {

using namespace fveg;

inline CellIndex cell_of(double x, double y, const Grid& g) {
  return {static_cast<int>(std::floor((x - g.x0) / g.hbar)),
          static_cast<int>(std::floor((y - g.y0) / g.hbar))};
}

// Bilinear of the containing cell evaluated at (x, y).
inline double point_value(const CellArray<CellBilinear>& r, double x, double y, const Grid& g) {
  const CellIndex c = cell_of(x, y, g);
  return r(c).at((x - g.x_center(c.i)) / g.hbar, (y - g.y_center(c.j)) / g.hbar);
}

// Angles in [0, 2 pi] where the circle crosses a grid line, found by
// bisection between n coarse samples, plus the quadrant angles.
inline std::vector<double> breakpoints(const SonicCircle& c, const Grid& g, int n) {
  const double two_pi = 2 * std::numbers::pi;
  auto cell = [&](double t) {
    return cell_of(c.center.x + c.radius * std::cos(t), c.center.y + c.radius * std::sin(t), g);
  };
  std::vector<double> br{0.0, two_pi};
  for (int q = 1; q < 4; ++q) br.push_back(q * two_pi / 4);
  const double dt = two_pi / n;
  for (int k = 0; k < n; ++k) {
    double lo = k * dt, hi = (k + 1) * dt;
    if (cell(lo) == cell(hi)) continue;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cell(mid) == cell(lo) ? lo : hi) = mid;
    }
    br.push_back(0.5 * (lo + hi));
  }
  std::sort(br.begin(), br.end());
  return br;
}

// Composite midpoint rule with about n nodes over the smooth pieces of the
// circle; fn(theta, x, y, weight) accumulates a circle mean.
template <class Fn>
void circle_mean(const SonicCircle& c, const Grid& g, int n, Fn&& fn) {
  const double two_pi = 2 * std::numbers::pi;
  const std::vector<double> br = breakpoints(c, g, 4096);
  for (std::size_t p = 0; p + 1 < br.size(); ++p) {
    const double len = br[p + 1] - br[p];
    if (len <= 0) continue;
    const int m = std::max(1, static_cast<int>(std::lround(n * len / two_pi)));
    const double dt = len / m;
    for (int k = 0; k < m; ++k) {
      const double t = br[p] + (k + 0.5) * dt;
      fn(t, c.center.x + c.radius * std::cos(t), c.center.y + c.radius * std::sin(t), dt / two_pi);
    }
  }
}

// All ten kernel moments of piecewise bilinear data on the circle, in the
// order of kAllKernels.
inline std::array<double, 10> moments(const SonicCircle& c, const Grid& g,
                                      const CellArray<CellBilinear>& data, int n) {
  std::array<double, 10> m{};
  circle_mean(c, g, n, [&](double t, double x, double y, double w) {
    const double d = point_value(data, x, y, g) * w;
    const double co = std::cos(t), si = std::sin(t);
    const double k[10] = {1.0, co, si, co * co, si * si, si * co, co >= 0 ? 1.0 : -1.0,
                          si >= 0 ? 1.0 : -1.0, co * co - si * si, 2 * si * co};
    for (int j = 0; j < 10; ++j) m[j] += d * k[j];
  });
  return m;
}

// Piecewise constant evolution operator evaluated literally.
inline PredictedPrimitive pwc(Point2 apex, const CellSnapshot& d, const BottomSlopes* slopes,
                              double b_apex, const LinearizationState& lin, double tau, double g,
                              int n) {
  const SonicCircle circ{{apex.x - tau * lin.u, apex.y - tau * lin.v}, lin.c * tau};
  double h = -b_apex, u = 0, v = 0;
  circle_mean(circ, d.grid, n, [&](double t, double x, double y, double w) {
    const CellIndex q = cell_of(x, y, d.grid);
    const double sc = std::cos(t) >= 0 ? 1 : -1, ss = std::sin(t) >= 0 ? 1 : -1;
    const double K = g * (d.h(q) + d.b(q) - d.V(q));
    const double L = g * (d.h(q) + d.b(q) + d.U(q));
    const double cs = std::cos(t) * std::sin(t);
    h += w * ((d.h(q) + d.b(q)) - lin.c / g * (d.u(q) * sc + d.v(q) * ss));
    if (slopes) h += w * tau * (lin.u * slopes->bx(q) + lin.v * slopes->by(q));
    u += w * (-K / lin.c * sc + d.u(q) * (std::cos(t) * std::cos(t) + 0.5) + d.v(q) * cs);
    v += w * (-L / lin.c * ss + d.u(q) * cs + d.v(q) * (std::sin(t) * std::sin(t) + 0.5));
  });
  return {h, u, v};
}

// Piecewise bilinear evolution operator evaluated literally; Q0 and P must
// lie inside a cell.
inline PredictedPrimitive pwb(Point2 apex, const Reconstruction& r, const LinearizationState& lin,
                              double tau, double g, int n) {
  const Grid& G = r.grid;
  const SonicCircle circ{{apex.x - tau * lin.u, apex.y - tau * lin.v}, lin.c * tau};
  const double x0 = circ.center.x, y0 = circ.center.y;
  const double hq0 = point_value(r.h, x0, y0, G), bq0 = point_value(r.b, x0, y0, G);
  const double uq0 = point_value(r.u, x0, y0, G), vq0 = point_value(r.v, x0, y0, G);
  const double pi = std::numbers::pi;
  // the text's (1/4) integral is (pi/2) times the mean, (1/pi) integral is 2 times the mean
  double h = -point_value(r.b, apex.x, apex.y, G) + hq0 + bq0, u = uq0, v = vq0;
  circle_mean(circ, G, n, [&](double t, double x, double y, double w) {
    const CellIndex q = cell_of(x, y, G);
    const double xi = (x - G.x_center(q.i)) / G.hbar, eta = (y - G.y_center(q.j)) / G.hbar;
    const double hQ = r.h(q).at(xi, eta), bQ = r.b(q).at(xi, eta);
    const double uQ = r.u(q).at(xi, eta), vQ = r.v(q).at(xi, eta);
    const double K = g * (hQ + bQ - r.V(q).at(xi, eta));
    const double L = g * (hQ + bQ + r.U(q).at(xi, eta));
    const CellBilinear& b = r.b(q);
    const double bx = (b.cx + b.cxy * eta) / G.hbar, by = (b.cy + b.cxy * xi) / G.hbar;
    const double c = std::cos(t), s = std::sin(t);
    h += w * (pi / 2 * ((hQ - hq0) + (bQ - bq0)) - 2 * lin.c / g * (uQ * c + vQ * s) +
              tau * (lin.u * bx + lin.v * by));
    u += w * (-2 / lin.c * K * c + pi / 2 * (3 * uQ * c * c + 3 * vQ * s * c - uQ - 0.5 * uq0));
    v += w * (-2 / lin.c * L * s + pi / 2 * (3 * uQ * s * c + 3 * vQ * s * s - vQ - 0.5 * vq0));
  });
  return {h, u, v};
}

}  // namespace oracle
