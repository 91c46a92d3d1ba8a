#pragma once

// Evolution Galerkin predictor: point values of (h, u, v) at edge quadrature
// nodes at the half time step, from approximate evolution operators of the
// linearised system integrated over the sonic circle.

#include <array>

#include "fveg/angular.hpp"
#include "fveg/core.hpp"
#include "fveg/recovery.hpp"

namespace fveg {

enum class NodeKind {
  vertex,           ///< (x_line(I), y_line(J))
  vertical_edge,    ///< midpoint of a vertical edge, (x_line(I), y_center(J))
  horizontal_edge,  ///< midpoint of a horizontal edge, (x_center(I), y_line(J))
};

struct EdgeNode {
  NodeKind kind = NodeKind::vertex;
  int I = 0;
  int J = 0;
};

struct NodeCells {
  std::array<CellIndex, 4> cells{};
  int count = 0;
};

Point2 node_position(const EdgeNode& node, const Grid& grid);
NodeCells adjacent_cells(const EdgeNode& node);

struct LinearizationState {
  double h = 0.0;
  double u = 0.0;
  double v = 0.0;
  double c = 0.0;  ///< sqrt(g h)
};

/// Arithmetic mean of the primitive states of the cells sharing the node
/// (two for an edge midpoint, four for a vertex).
LinearizationState linearization_state(const EdgeNode& node, const CellSnapshot& data,
                                       const PhysicalParams& params);

struct PredictedPrimitive {
  double h = 0.0;
  double u = 0.0;
  double v = 0.0;
};

struct EvolutionOptions {
  /// 0 selects exact sector-wise integration; n > 0 replaces every angular
  /// integral by n uniform nodes (debugging aid).
  int angular_samples = 0;
};

/// Circle at time level n for apex `at`: centre at - tau (u~, v~), radius c~ tau.
SonicCircle sonic_circle(Point2 at, const LinearizationState& lin, double tau);
SonicCircleTrace trace_sonic_circle(const EdgeNode& node, const LinearizationState& lin,
                                    double tau, const Grid& grid);

/// Piecewise constant bottom slopes b_x, b_y per cell.
struct BottomSlopes {
  CellArray<double> bx, by;

  BottomSlopes() = default;
  explicit BottomSlopes(const Grid& g) : bx(g, 0.0), by(g, 0.0) {}
};

BottomSlopes bottom_slopes(const CellArray<CellBilinear>& recovered_b, const Grid& grid);

/// Operator for piecewise constant data. K = g(h + b - V) and L = g(h + b + U)
/// are formed cell by cell from `data`. `slopes` may be null for a flat
/// bottom; `b_at_node` is b(P).
PredictedPrimitive evolve_const(const EdgeNode& node, const CellSnapshot& data,
                                const BottomSlopes* slopes, double b_at_node,
                                const LinearizationState& lin, double tau,
                                const PhysicalParams& params, const EvolutionOptions& opts = {});

/// Operator for piecewise bilinear data. K and L are assembled pointwise from
/// the recovered surface, U and V.
PredictedPrimitive evolve_bilin(const EdgeNode& node, const Reconstruction& rec,
                                const LinearizationState& lin, double tau,
                                const PhysicalParams& params, const EvolutionOptions& opts = {});

/// Recovered bottom at the node; averaged over adjacent cells.
double bottom_at_node(const EdgeNode& node, const Reconstruction& rec);

/// Everything the predictor reads at time level n.
struct PredictorInput {
  int order = 2;
  CellSnapshot cells;
  Reconstruction rec;
  BottomSlopes slopes;
  /// Order 2 only: cell value minus mean of the recovered bilinear for the
  /// surface (stored as h, with b = 0), u, v, U and V.
  CellSnapshot defect;
};

/// Builds the recovery, bottom slopes and (order 2) the defect fields.
PredictorInput make_predictor_input(const CellSnapshot& cells, int order, Limiter limiter);

/// order 1: E_const on the cell data.
/// order 2: E_bilin on the recovery plus E_const on the defect fields, the
/// latter without the b(P) and bottom-advection terms.
PredictedPrimitive predict(const EdgeNode& node, const PredictorInput& input,
                           const LinearizationState& lin, double tau, const PhysicalParams& params,
                           const EvolutionOptions& opts = {});

PredictedPrimitive predict(const EdgeNode& node, const PredictorInput& input, double tau,
                           const PhysicalParams& params, const EvolutionOptions& opts = {});

}  // namespace fveg
