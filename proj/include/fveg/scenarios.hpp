#pragma once

// Benchmark problems and exact discrete equilibria.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fveg/core.hpp"
#include "fveg/fv_scheme.hpp"

namespace fveg {

/// How cell averages are initialised from the pointwise initial functions.
enum class InitSampling {
  midpoint,  ///< value at the cell centre
  gauss3,    ///< 3 x 3 Gauss-Legendre cell average
};

struct ScenarioOverrides {
  std::optional<double> eps;
  std::optional<double> f;
  std::optional<double> g;
  std::optional<double> t_end;
  std::optional<double> x_min;  ///< west end of the domain
  std::optional<double> x_max;  ///< east end; hbar = (x_max - x_min) / nx
  std::optional<double> y_min;
};

struct Scenario {
  std::string name;
  /// The mesh is square: hbar = (x_max - x_min) / nx and the y-extent is
  /// ny * hbar starting at y_min.
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  /// Nominal y-extent of the paper's domain (informational).
  double y_extent = 1.0;
  PhysicalParams params;
  BoundaryCondition bc;
  double t_end = 1.0;
  double eps = 0.0;
  std::vector<std::pair<int, int>> suggested_resolutions;

  std::function<double(double, double)> bottom;
  /// Initial (h, u, v) at a point, perturbation included.
  std::function<PrimitiveState(double, double)> initial;

  Grid make_grid(int nx, int ny) const;
};

struct InitialData {
  ConservedField field;
  Bathymetry bathymetry;
};

/// Known names: lake_1d, lake_2d, rossby_jet, accuracy_2d. Throws
/// ConfigurationError on an unknown name.
Scenario make_scenario(std::string_view name, const ScenarioOverrides& overrides = {});

std::vector<std::string> scenario_names();

/// Cell averages on an nx x ny grid, ghost cells filled by the scenario's
/// boundary rule (bottom included). Throws DryStateError if any h <= 0.
InitialData initialize(const Scenario& scenario, int nx, int ny,
                       InitSampling sampling = InitSampling::midpoint);

/// Normalised jet profile of the Rossby adjustment problem,
/// N_L(x) = (1 + tanh(4x/L + 2)) (1 - tanh(4x/L - 2)) / (1 + tanh 2)^2.
double jet_profile(double x, double L);

/// Geostrophic jet u = 0, v = v(x) with h chosen so that
///   g ((h + b)_i - (h + b)_{i-1}) = hbar f (v_{i-1} + v_i) / 2
/// over the whole padded row, and h_0 = h0 in the first interior column.
/// `bottom` may be empty (flat). Throws DryStateError when some h <= 0.
InitialData discrete_jet_equilibrium(const Grid& grid, const PhysicalParams& params,
                                     const std::function<double(double)>& v_profile, double h0,
                                     const std::function<double(double)>& bottom = {});

}  // namespace fveg
