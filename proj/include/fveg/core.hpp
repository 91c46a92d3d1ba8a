#pragma once

// State types, fluxes and time-step control for the 2-D shallow water system
// with bottom topography and Coriolis forcing.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fveg {

/// Raised whenever a depth h <= 0 is encountered. Wetting and drying is not
/// supported, so a dry state always aborts the computation.
class DryStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad grid, CFL outside (0, 1], sonic circle leaving
/// the padded domain, and similar.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PhysicalParams {
  double g = 1.0;  ///< gravitational acceleration
  double f = 0.0;  ///< Coriolis parameter, 0 disables rotation

  void validate() const;
};

enum class Axis { x, y };

/// Uniform Cartesian grid of square cells. Interior cells are indexed
/// i = 0..nx-1, j = 0..ny-1; ghost cells extend the range by `ghost` layers
/// on every side. Grid lines (cell faces) are indexed I = 0..nx with
/// x_line(I) = x0 + I * hbar.
struct Grid {
  int nx = 1;
  int ny = 1;
  double hbar = 1.0;
  double x0 = 0.0;
  double y0 = 0.0;
  int ghost = 2;

  void validate() const;

  double x_center(int i) const { return x0 + (i + 0.5) * hbar; }
  double y_center(int j) const { return y0 + (j + 0.5) * hbar; }
  double x_line(int i_face) const { return x0 + i_face * hbar; }
  double y_line(int j_face) const { return y0 + j_face * hbar; }

  int padded_nx() const { return nx + 2 * ghost; }
  int padded_ny() const { return ny + 2 * ghost; }

  bool in_padded(int i, int j) const {
    return i >= -ghost && i < nx + ghost && j >= -ghost && j < ny + ghost;
  }
  bool in_interior(int i, int j) const {
    return i >= 0 && i < nx && j >= 0 && j < ny;
  }

  double x_extent() const { return nx * hbar; }
  double y_extent() const { return ny * hbar; }
};

struct CellIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Ghost-padded cell-centred array. Indices run over [-ghost, n + ghost).
template <class T>
class CellArray {
 public:
  CellArray() = default;
  CellArray(const Grid& grid, T init = T{})
      : nx_(grid.nx), ny_(grid.ny), ghost_(grid.ghost),
        stride_(grid.padded_nx()),
        data_(static_cast<std::size_t>(grid.padded_nx()) * grid.padded_ny(), init) {}

  T& operator()(int i, int j) { return data_[offset(i, j)]; }
  const T& operator()(int i, int j) const { return data_[offset(i, j)]; }
  T& operator()(CellIndex c) { return (*this)(c.i, c.j); }
  const T& operator()(CellIndex c) const { return (*this)(c.i, c.j); }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return ghost_; }
  bool empty() const { return data_.empty(); }

 private:
  std::size_t offset(int i, int j) const {
    return static_cast<std::size_t>(j + ghost_) * stride_ + static_cast<std::size_t>(i + ghost_);
  }

  int nx_ = 0;
  int ny_ = 0;
  int ghost_ = 0;
  int stride_ = 0;
  std::vector<T> data_;
};

struct ConservedState {
  double h = 0.0;
  double hu = 0.0;
  double hv = 0.0;
};

struct PrimitiveState {
  double h = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// Flux vector (mass, x-momentum, y-momentum).
struct FluxTriple {
  double mass = 0.0;
  double momentum_x = 0.0;
  double momentum_y = 0.0;
};

struct ConservedField {
  Grid grid;
  CellArray<ConservedState> cells;
  double time = 0.0;

  ConservedField() = default;
  explicit ConservedField(const Grid& g) : grid(g), cells(g) {}

  /// Throws DryStateError if any interior cell has h <= 0.
  void validate() const;
};

/// Bottom elevation at cell centres, ghosts included. Ghost values are
/// filled by the same boundary rule as the flow variables.
struct Bathymetry {
  CellArray<double> b;

  Bathymetry() = default;
  explicit Bathymetry(const Grid& g, double value = 0.0) : b(g, value) {}
};

struct StepContext {
  double dt = 0.0;
  double tau = 0.0;     ///< half step, dt / 2
  double lambda = 0.0;  ///< dt / hbar

  static StepContext make(double dt, double hbar);
};

PrimitiveState to_primitive(const ConservedState& s);
ConservedState to_conserved(const PrimitiveState& w);

FluxTriple physical_flux(const PrimitiveState& w, Axis axis, const PhysicalParams& params);

/// max over interior cells of max(|u| + c, |v| + c) with c = sqrt(g h).
double max_signal_speed(const ConservedField& field, const PhysicalParams& params);

/// dt = cfl * hbar / max_signal_speed. When `t_end` is given the step is
/// shortened so that field.time + dt does not pass it.
StepContext compute_dt(const ConservedField& field, double cfl, const PhysicalParams& params,
                       std::optional<double> t_end = std::nullopt);

}  // namespace fveg
