#pragma once

// Piecewise bilinear recovery of cell averages.
//
// A CellBilinear is written in cell-normalised coordinates
// xi = (x - x_i) / hbar, eta = (y - y_j) / hbar, both in [-1/2, 1/2]:
//
//   q(xi, eta) = c00 + cx * xi + cy * eta + cxy * xi * eta
//
// so cx and cy are the value increments across one cell.
//
// The unlimited recovery is the continuous bilinear interpolant of vertex
// values, each vertex value being the mean of the four adjacent cell
// averages. Its cell mean c00 is the 1-2-1 x 1-2-1 average of the cell data,
// not the cell average itself; the difference is the residual field that the
// constant-data evolution operator carries separately.

#include <string_view>

#include "fveg/core.hpp"

namespace fveg {

enum class Limiter { none, minmod, mc };

Limiter parse_limiter(std::string_view name);
std::string_view to_string(Limiter kind);

/// Limited slope from the two one-sided differences a (backward) and b
/// (forward). Returns 0 when a * b <= 0.
double limit_slope(Limiter kind, double a, double b);

struct CellBilinear {
  double c00 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double cxy = 0.0;

  double at(double xi, double eta) const { return c00 + cx * xi + cy * eta + cxy * xi * eta; }
  /// Exact mean over the cell.
  double mean() const { return c00; }

  friend bool operator==(const CellBilinear&, const CellBilinear&) = default;
};

/// Cell values of every field the predictor needs, ghosts included.
/// h, u, v are primitive cell averages; b is the bottom at cell centres and
/// U, V are the Coriolis primitives at cell centres.
struct CellSnapshot {
  Grid grid;
  CellArray<double> h, u, v, b, U, V;

  CellSnapshot() = default;
  explicit CellSnapshot(const Grid& g) : grid(g), h(g), u(g), v(g), b(g), U(g), V(g) {}

  double surface(int i, int j) const { return h(i, j) + b(i, j); }
};

/// Per-cell bilinear approximations. `surface` is the recovered h + b and
/// `h` is derived from it as surface - b. `limited` flags cells in which the
/// flow variables use limited slopes.
struct Reconstruction {
  Grid grid;
  CellArray<CellBilinear> h, u, v, b, U, V, surface;
  CellArray<unsigned char> limited;

  Reconstruction() = default;
  explicit Reconstruction(const Grid& g)
      : grid(g), h(g), u(g), v(g), b(g), U(g), V(g), surface(g), limited(g, 0) {}
};

/// Continuous vertex-averaged bilinear interpolant of one scalar field.
/// The outermost ghost layer has no neighbours and is left piecewise
/// constant.
CellArray<CellBilinear> recover_continuous(const CellArray<double>& q, const Grid& grid);

/// Per-cell value q_ij - mu_x^2 mu_y^2 q_ij with the 1-2-1 x 1-2-1 / 16
/// stencil. Zero in the outermost ghost layer.
CellArray<double> residual_field(const CellArray<double>& q, const Grid& grid);

/// Full recovery of h, u, v, b, U, V.
///
/// With Limiter::none every field uses the continuous interpolant. With a
/// limiter, a cell switches to limited slopes (cxy = 0, c00 = cell value)
/// for a flow variable when the limited and unlimited slope in x or y
/// differ in sign or by more than a factor 2. The free surface is limited in
/// x through h + b - V and in y through h + b + U, so geostrophically
/// balanced data keep constant potential energies. b, U and V are never
/// limited.
Reconstruction recover(const CellSnapshot& data, Limiter limiter);

/// Difference between the cell value and the mean of its recovered
/// bilinear. Equals residual_field() in cells using the continuous
/// interpolant and vanishes in limited cells.
CellArray<double> conservation_defect(const CellArray<double>& q,
                                      const CellArray<CellBilinear>& recovered,
                                      const Grid& grid);

/// Evaluates a recovered field inside cell `cell` at normalised local
/// coordinates. Throws ConfigurationError when |xi| or |eta| exceeds 1/2.
double eval_reconstruction(const CellArray<CellBilinear>& recon, CellIndex cell, double xi,
                           double eta);

}  // namespace fveg
