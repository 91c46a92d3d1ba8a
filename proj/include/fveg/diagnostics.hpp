#pragma once

// Error norms, convergence orders, equilibrium residuals and the streamline
// Taylor expansion used to check the predictor.

#include <functional>
#include <optional>
#include <vector>

#include "fveg/angular.hpp"
#include "fveg/core.hpp"
#include "fveg/evolution.hpp"

namespace fveg {

struct VariableErrors {
  double h = 0.0;
  double hu = 0.0;
  double hv = 0.0;
};

/// One row per resolution; eoc[k] compares rows k - 1 and k and is empty
/// for the first row or when an error vanishes.
struct ErrorReport {
  std::vector<int> resolutions;
  std::vector<VariableErrors> errors;
  std::vector<std::optional<VariableErrors>> eoc;
  double runtime_seconds = 0.0;
};

/// Block average of `fine` onto `coarse`. Both grids must cover the same
/// region and fine.nx / coarse.nx == fine.ny / coarse.ny must be a positive
/// integer.
ConservedField restrict_to(const ConservedField& fine, const Grid& coarse);

/// sum hbar^2 |q - q_ref| over interior cells, q in {h, hu, hv}. `reference`
/// may live on the same or an integer-refined grid.
VariableErrors l1_error(const ConservedField& field, const ConservedField& reference);

/// log2(e_coarse / e_fine), empty unless both errors are positive.
std::optional<double> eoc(double e_coarse, double e_fine);
std::optional<VariableErrors> eoc(const VariableErrors& coarse, const VariableErrors& fine);

/// Adds the EOC column to a report whose resolutions double row by row.
void fill_eoc(ErrorReport& report);

struct LakeAtRestResidual {
  double surface = 0.0;  ///< max |h + b - C|, C the mean of h + b
  double hu = 0.0;
  double hv = 0.0;
};

LakeAtRestResidual lake_at_rest_residual(const ConservedField& field, const Bathymetry& bathymetry);

/// sum hbar^2 |f v - g d_x(h + b)| with the central difference over the
/// neighbouring cells (ghost cells used at the boundary).
double geostrophic_residual(const ConservedField& field, const Bathymetry& bathymetry,
                            const PhysicalParams& params);

/// Value and derivatives up to second order of a smooth scalar at a point.
struct Jet2 {
  double value = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dxx = 0.0;
  double dxy = 0.0;
  double dyy = 0.0;
};

struct SmoothSample {
  Jet2 h, u, v, b;
};

using SmoothField = std::function<SmoothSample(Point2)>;

/// Second-order Taylor expansion along the streamline of the linearised
/// system, evaluated at Q0 = P - tau (u~, v~):
///   h1 = h - tau h~ (u_x + v_y) + tau^2/2 h~ (K_xx + L_yy)
///   u1 = u - tau K_x + tau^2/2 (g h~ (u_x + v_y)_x - g (u~ b_x + v~ b_y)_x + f L_y)
///   v1 = v - tau L_y + tau^2/2 (g h~ (u_x + v_y)_y - g (u~ b_x + v~ b_y)_y - f K_x)
/// with K_x = g (h + b)_x - f v and L_y = g (h + b)_y + f u.
PredictedPrimitive taylor_predict(Point2 apex, const SmoothField& field,
                                  const LinearizationState& lin, double tau,
                                  const PhysicalParams& params);

}  // namespace fveg
