#pragma once

// Finite volume corrector and the full two-step time step.

#include <optional>
#include <utility>
#include <vector>

#include "fveg/core.hpp"
#include "fveg/evolution.hpp"
#include "fveg/recovery.hpp"

namespace fveg {

enum class BoundaryKind { extrapolate, periodic };

struct BoundaryCondition {
  BoundaryKind west = BoundaryKind::extrapolate;
  BoundaryKind east = BoundaryKind::extrapolate;
  BoundaryKind south = BoundaryKind::extrapolate;
  BoundaryKind north = BoundaryKind::extrapolate;

  static BoundaryCondition uniform(BoundaryKind kind) { return {kind, kind, kind, kind}; }
  /// Throws unless periodic sides come in opposite pairs.
  void validate() const;
};

/// Fills ghost cells: zeroth-order copy of the nearest interior cell
/// (extrapolate) or wrap-around copy (periodic). x-ghosts are filled first,
/// then y-ghosts over the full padded width, so corners are consistent.
void apply_boundary(ConservedField& field, const BoundaryCondition& bc);
void apply_boundary(CellArray<double>& q, const Grid& grid, const BoundaryCondition& bc);

/// Discrete Coriolis primitives at cell centres over the padded grid.
/// Reference cell (0, 0): V(0, j) = 0 and U(i, 0) = 0, and
///   V(i, j) - V(i-1, j) = hbar f/g (v(i-1, j) + v(i, j)) / 2
///   U(i, j) - U(i, j-1) = hbar f/g (u(i, j-1) + u(i, j)) / 2.
struct CoriolisPrimitives {
  CellArray<double> U, V;
};

CoriolisPrimitives coriolis_primitives(const CellArray<double>& u, const CellArray<double>& v,
                                       const Grid& grid, const PhysicalParams& params);

/// Dense storage for the three node families of the interior edges.
template <class T>
struct NodeTable {
  int nx = 0;
  int ny = 0;
  std::vector<T> vertex;           // (nx + 1) x (ny + 1)
  std::vector<T> vertical_mid;     // (nx + 1) x ny
  std::vector<T> horizontal_mid;   // nx x (ny + 1)

  NodeTable() = default;
  NodeTable(int nx_, int ny_, T init = T{})
      : nx(nx_), ny(ny_),
        vertex(static_cast<std::size_t>(nx_ + 1) * (ny_ + 1), init),
        vertical_mid(static_cast<std::size_t>(nx_ + 1) * ny_, init),
        horizontal_mid(static_cast<std::size_t>(nx_) * (ny_ + 1), init) {}

  T& at(const EdgeNode& n) { return const_cast<T&>(std::as_const(*this).at(n)); }
  const T& at(const EdgeNode& n) const {
    switch (n.kind) {
      case NodeKind::vertex: return vertex[static_cast<std::size_t>(n.J) * (nx + 1) + n.I];
      case NodeKind::vertical_edge: return vertical_mid[static_cast<std::size_t>(n.J) * (nx + 1) + n.I];
      case NodeKind::horizontal_edge: break;
    }
    return horizontal_mid[static_cast<std::size_t>(n.J) * nx + n.I];
  }
};

/// Predicted half-step states at every quadrature node, with the bottom and
/// the half-step Coriolis primitives at the same nodes. V_hat is accumulated
/// along x over vertical-edge nodes and vertices; U_hat along y over
/// horizontal-edge nodes and vertices.
struct PredictedStates {
  Grid grid;
  NodeTable<PredictedPrimitive> state;
  NodeTable<double> b;
  NodeTable<double> U_hat;
  NodeTable<double> V_hat;

  PredictedStates() = default;
  explicit PredictedStates(const Grid& g)
      : grid(g), state(g.nx, g.ny), b(g.nx, g.ny), U_hat(g.nx, g.ny), V_hat(g.nx, g.ny) {}
};

/// Fills U_hat and V_hat of `ps` from the predicted velocities by the
/// trapezoidal prefix sums, starting from zero at the west (resp. south)
/// boundary node.
void half_step_coriolis_primitives(PredictedStates& ps, const PhysicalParams& params);

/// Simpson weights (1/6, 4/6, 1/6) over (vertex, midpoint, vertex).
inline constexpr double kSimpsonEnd = 1.0 / 6.0;
inline constexpr double kSimpsonMid = 4.0 / 6.0;

struct EdgeFluxes {
  int nx = 0;
  int ny = 0;
  std::vector<FluxTriple> x_faces;  ///< (nx + 1) x ny, face I between cells I-1 and I
  std::vector<FluxTriple> y_faces;  ///< nx x (ny + 1)

  const FluxTriple& x_face(int I, int j) const { return x_faces[static_cast<std::size_t>(j) * (nx + 1) + I]; }
  const FluxTriple& y_face(int i, int J) const { return y_faces[static_cast<std::size_t>(J) * nx + i]; }
};

EdgeFluxes edge_fluxes(const PredictedStates& ps, const PhysicalParams& params);

/// Source term times mesh size per interior cell, row-major nx x ny.
/// The mass component is always zero.
std::vector<FluxTriple> source_term(const PredictedStates& ps, const PhysicalParams& params);

/// U^{n+1} = U^n - lambda (flux differences) + lambda B on interior cells.
/// Ghost cells are copied unchanged. Throws DryStateError on h <= 0.
ConservedField fv_update(const ConservedField& field, const EdgeFluxes& fluxes,
                         const std::vector<FluxTriple>& source, const StepContext& ctx);

struct SchemeConfig {
  PhysicalParams params;
  int order = 2;
  Limiter limiter = Limiter::minmod;
  double cfl = 0.5;
  BoundaryCondition bc;
  EvolutionOptions evolution;
};

struct StepRecord {
  double dt = 0.0;
  double time = 0.0;  ///< time after the step
  double h_min = 0.0;
  double h_max = 0.0;
};

/// Primitive cell values, bottom and Coriolis primitives of a ghost-filled
/// field.
CellSnapshot make_snapshot(const ConservedField& field, const Bathymetry& bathymetry,
                           const PhysicalParams& params);

/// Predictor at every node, bottom at nodes and half-step primitives.
PredictedStates predict_all(const PredictorInput& input, double tau, const PhysicalParams& params,
                            const EvolutionOptions& opts = {});

/// One FVEG step with a given time step. `field` must already have its
/// ghost cells filled; `bathymetry` too. The result has ghosts refilled.
ConservedField step_with(const ConservedField& field, const Bathymetry& bathymetry,
                         const SchemeConfig& config, const StepContext& ctx, StepRecord* record = nullptr);

/// One step with dt from the CFL condition, clipped to t_end when given.
ConservedField step(const ConservedField& field, const Bathymetry& bathymetry,
                    const SchemeConfig& config, StepRecord* record = nullptr,
                    std::optional<double> t_end = std::nullopt);

}  // namespace fveg
