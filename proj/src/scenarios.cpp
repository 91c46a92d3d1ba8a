#include "fveg/scenarios.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fveg {

namespace {

constexpr double kPi = std::numbers::pi;

double indicator(double x, double lo, double hi) { return (x > lo && x < hi) ? 1.0 : 0.0; }

Scenario lake_1d(double eps) {
  Scenario s;
  s.name = "lake_1d";
  s.x_min = 0.0;
  s.x_max = 1.0;
  s.y_extent = 1.0;
  s.params = {1.0, 0.0};
  s.t_end = 0.7;
  s.eps = eps;
  s.suggested_resolutions = {{20, 20}, {100, 5}};
  s.bottom = [](double x, double) {
    return std::abs(x - 0.5) < 0.1 ? 0.25 * (std::cos(10.0 * kPi * (x - 0.5)) + 1.0) : 0.0;
  };
  s.initial = [b = s.bottom, eps](double x, double y) {
    return PrimitiveState{1.0 - b(x, y) + eps * indicator(x, 0.1, 0.2), 0.0, 0.0};
  };
  return s;
}

Scenario lake_2d(double eps) {
  Scenario s;
  s.name = "lake_2d";
  s.x_min = 0.0;
  s.x_max = 2.0;
  s.y_extent = 1.0;
  s.params = {1.0, 0.0};
  s.t_end = 0.6;
  s.eps = eps;
  s.suggested_resolutions = {{20, 20}, {200, 100}, {600, 300}};
  s.bottom = [](double x, double y) {
    return 0.8 * std::exp(-5.0 * (x - 0.9) * (x - 0.9) - 50.0 * (y - 0.5) * (y - 0.5));
  };
  s.initial = [b = s.bottom, eps](double x, double y) {
    return PrimitiveState{1.0 - b(x, y) + eps * indicator(x, 0.05, 0.15), 0.0, 0.0};
  };
  return s;
}

Scenario rossby_jet() {
  Scenario s;
  s.name = "rossby_jet";
  s.x_min = -10.0;
  s.x_max = 10.0;
  s.y_extent = 0.0;
  s.params = {1.0, 1.0};
  s.t_end = 10.0;
  s.suggested_resolutions = {{400, 4}, {1000, 4}};
  s.bottom = [](double, double) { return 0.0; };
  s.initial = [](double x, double) { return PrimitiveState{1.0, 0.0, 2.0 * jet_profile(x, 2.0)}; };
  return s;
}

Scenario accuracy_2d() {
  Scenario s;
  s.name = "accuracy_2d";
  s.x_min = 0.0;
  s.x_max = 1.0;
  s.y_extent = 1.0;
  s.params = {9.812, 10.0};
  s.bc = BoundaryCondition::uniform(BoundaryKind::periodic);
  s.t_end = 0.05;
  s.suggested_resolutions = {{25, 25}, {50, 50}, {100, 100}, {200, 200}};
  s.bottom = [](double x, double y) { return std::sin(2.0 * kPi * x) + std::cos(2.0 * kPi * y); };
  s.initial = [](double x, double y) {
    const double h = 10.0 + std::exp(std::sin(2.0 * kPi * x)) * std::cos(2.0 * kPi * y);
    const double hu = std::sin(std::cos(2.0 * kPi * x)) * std::sin(2.0 * kPi * y);
    const double hv = std::cos(2.0 * kPi * x) * std::cos(std::sin(2.0 * kPi * y));
    return PrimitiveState{h, hu / h, hv / h};
  };
  return s;
}

// Averages of the conserved variables and the bottom over one cell.
struct CellSample {
  ConservedState q;
  double b = 0.0;
};

CellSample sample_cell(const Scenario& s, const Grid& grid, int i, int j, InitSampling sampling) {
  const double xc = grid.x_center(i);
  const double yc = grid.y_center(j);
  if (sampling == InitSampling::midpoint) {
    return {to_conserved(s.initial(xc, yc)), s.bottom(xc, yc)};
  }
  const double r = std::sqrt(0.6) * 0.5 * grid.hbar;
  const std::array<double, 3> offsets = {-r, 0.0, r};
  const std::array<double, 3> weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  CellSample out;
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 3; ++c) {
      const double w = weights[a] * weights[c];
      const double x = xc + offsets[a];
      const double y = yc + offsets[c];
      const ConservedState q = to_conserved(s.initial(x, y));
      out.q.h += w * q.h;
      out.q.hu += w * q.hu;
      out.q.hv += w * q.hv;
      out.b += w * s.bottom(x, y);
    }
  }
  return out;
}

}  // namespace

Grid Scenario::make_grid(int nx, int ny) const {
  if (nx < 1 || ny < 1) throw ConfigurationError("grid needs at least one cell per axis");
  Grid grid;
  grid.nx = nx;
  grid.ny = ny;
  grid.hbar = (x_max - x_min) / nx;
  grid.x0 = x_min;
  grid.y0 = y_min;
  grid.validate();
  return grid;
}

std::vector<std::string> scenario_names() { return {"lake_1d", "lake_2d", "rossby_jet", "accuracy_2d"}; }

Scenario make_scenario(std::string_view name, const ScenarioOverrides& overrides) {
  const double eps = overrides.eps.value_or(0.0);
  Scenario s;
  if (name == "lake_1d") {
    s = lake_1d(eps);
  } else if (name == "lake_2d") {
    s = lake_2d(eps);
  } else if (name == "rossby_jet") {
    s = rossby_jet();
  } else if (name == "accuracy_2d") {
    s = accuracy_2d();
  } else {
    std::ostringstream msg;
    msg << "unknown scenario '" << name << "'";
    throw ConfigurationError(msg.str());
  }
  if (overrides.f) s.params.f = *overrides.f;
  if (overrides.g) s.params.g = *overrides.g;
  if (overrides.t_end) s.t_end = *overrides.t_end;
  if (overrides.x_min) s.x_min = *overrides.x_min;
  if (overrides.x_max) s.x_max = *overrides.x_max;
  if (overrides.y_min) s.y_min = *overrides.y_min;
  if (!(s.x_max > s.x_min)) throw ConfigurationError("x_max must exceed x_min");
  s.params.validate();
  return s;
}

InitialData initialize(const Scenario& scenario, int nx, int ny, InitSampling sampling) {
  const Grid grid = scenario.make_grid(nx, ny);
  InitialData data{ConservedField(grid), Bathymetry(grid)};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const CellSample c = sample_cell(scenario, grid, i, j, sampling);
      data.field.cells(i, j) = c.q;
      data.bathymetry.b(i, j) = c.b;
    }
  }
  data.field.validate();
  apply_boundary(data.field, scenario.bc);
  apply_boundary(data.bathymetry.b, grid, scenario.bc);
  return data;
}

double jet_profile(double x, double L) {
  const double t2 = std::tanh(2.0);
  return (1.0 + std::tanh(4.0 * x / L + 2.0)) * (1.0 - std::tanh(4.0 * x / L - 2.0)) /
         ((1.0 + t2) * (1.0 + t2));
}

InitialData discrete_jet_equilibrium(const Grid& grid, const PhysicalParams& params,
                                     const std::function<double(double)>& v_profile, double h0,
                                     const std::function<double(double)>& bottom) {
  grid.validate();
  params.validate();
  InitialData data{ConservedField(grid), Bathymetry(grid)};
  const int gh = grid.ghost;
  const int n = grid.padded_nx();
  std::vector<double> v(n), b(n), eta(n);
  for (int k = 0; k < n; ++k) {
    const double x = grid.x_center(k - gh);
    v[k] = v_profile(x);
    b[k] = bottom ? bottom(x) : 0.0;
  }
  const double scale = grid.hbar * params.f / params.g;
  eta[gh] = h0 + b[gh];
  for (int k = gh + 1; k < n; ++k) eta[k] = eta[k - 1] + scale * 0.5 * (v[k - 1] + v[k]);
  for (int k = gh - 1; k >= 0; --k) eta[k] = eta[k + 1] - scale * 0.5 * (v[k] + v[k + 1]);

  for (int k = 0; k < n; ++k) {
    const double h = eta[k] - b[k];
    if (!(h > 0.0)) throw DryStateError("jet equilibrium has a dry cell; choose a larger h0");
    for (int j = -gh; j < grid.ny + gh; ++j) {
      data.field.cells(k - gh, j) = to_conserved({h, 0.0, v[k]});
      data.bathymetry.b(k - gh, j) = b[k];
    }
  }
  return data;
}

}  // namespace fveg
