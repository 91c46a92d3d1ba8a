#include "fveg/core.hpp"

#include <algorithm>
#include <sstream>

namespace fveg {

void PhysicalParams::validate() const {
  if (!(g > 0.0)) throw ConfigurationError("gravitational constant g must be positive");
  if (!(f >= 0.0)) throw ConfigurationError("Coriolis parameter f must be non-negative");
}

void Grid::validate() const {
  if (nx < 1 || ny < 1) throw ConfigurationError("grid needs at least one cell per axis");
  if (!(hbar > 0.0)) throw ConfigurationError("mesh size must be positive");
  if (ghost < 2) throw ConfigurationError("ghost layer width must be at least 2");
}

void ConservedField::validate() const {
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (!(cells(i, j).h > 0.0)) {
        std::ostringstream msg;
        msg << "dry or invalid depth h=" << cells(i, j).h << " in cell (" << i << ", " << j << ")";
        throw DryStateError(msg.str());
      }
    }
  }
}

StepContext StepContext::make(double dt, double hbar) {
  if (!(dt > 0.0)) throw ConfigurationError("time step must be positive");
  return StepContext{dt, 0.5 * dt, dt / hbar};
}

PrimitiveState to_primitive(const ConservedState& s) {
  if (!(s.h > 0.0)) throw DryStateError("cannot form velocities from a dry state");
  return {s.h, s.hu / s.h, s.hv / s.h};
}

ConservedState to_conserved(const PrimitiveState& w) {
  return {w.h, w.h * w.u, w.h * w.v};
}

FluxTriple physical_flux(const PrimitiveState& w, Axis axis, const PhysicalParams& params) {
  const double pressure = 0.5 * params.g * w.h * w.h;
  const double huv = w.h * w.u * w.v;
  if (axis == Axis::x) {
    return {w.h * w.u, w.h * w.u * w.u + pressure, huv};
  }
  return {w.h * w.v, huv, w.h * w.v * w.v + pressure};
}

double max_signal_speed(const ConservedField& field, const PhysicalParams& params) {
  double speed = 0.0;
  const Grid& grid = field.grid;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const PrimitiveState w = to_primitive(field.cells(i, j));
      const double c = std::sqrt(params.g * w.h);
      speed = std::max({speed, std::abs(w.u) + c, std::abs(w.v) + c});
    }
  }
  return speed;
}

StepContext compute_dt(const ConservedField& field, double cfl, const PhysicalParams& params,
                       std::optional<double> t_end) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigurationError("CFL number must lie in (0, 1]");
  const double speed = max_signal_speed(field, params);
  if (!(speed > 0.0)) throw ConfigurationError("zero signal speed gives an unbounded time step");
  double dt = cfl * field.grid.hbar / speed;
  if (t_end) {
    const double remaining = *t_end - field.time;
    if (!(remaining > 0.0)) throw ConfigurationError("field time already at or beyond t_end");
    dt = std::min(dt, remaining);
  }
  return StepContext::make(dt, field.grid.hbar);
}

}  // namespace fveg
