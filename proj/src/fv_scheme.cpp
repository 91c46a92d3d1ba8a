#include "fveg/fv_scheme.hpp"

#include <algorithm>
#include <limits>

namespace fveg {

namespace {

int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

template <class T>
void fill_ghosts(CellArray<T>& q, const Grid& grid, const BoundaryCondition& bc) {
  const int gh = grid.ghost;
  for (int j = 0; j < grid.ny; ++j) {
    for (int k = 1; k <= gh; ++k) {
      q(-k, j) = bc.west == BoundaryKind::periodic ? q(wrap(-k, grid.nx), j) : q(0, j);
      q(grid.nx - 1 + k, j) =
          bc.east == BoundaryKind::periodic ? q(wrap(grid.nx - 1 + k, grid.nx), j) : q(grid.nx - 1, j);
    }
  }
  for (int i = -gh; i < grid.nx + gh; ++i) {
    for (int k = 1; k <= gh; ++k) {
      q(i, -k) = bc.south == BoundaryKind::periodic ? q(i, wrap(-k, grid.ny)) : q(i, 0);
      q(i, grid.ny - 1 + k) =
          bc.north == BoundaryKind::periodic ? q(i, wrap(grid.ny - 1 + k, grid.ny)) : q(i, grid.ny - 1);
    }
  }
}

}  // namespace

void BoundaryCondition::validate() const {
  if ((west == BoundaryKind::periodic) != (east == BoundaryKind::periodic) ||
      (south == BoundaryKind::periodic) != (north == BoundaryKind::periodic)) {
    throw ConfigurationError("periodic boundaries must be set on opposite sides together");
  }
}

void apply_boundary(ConservedField& field, const BoundaryCondition& bc) {
  bc.validate();
  fill_ghosts(field.cells, field.grid, bc);
}

void apply_boundary(CellArray<double>& q, const Grid& grid, const BoundaryCondition& bc) {
  bc.validate();
  fill_ghosts(q, grid, bc);
}

CoriolisPrimitives coriolis_primitives(const CellArray<double>& u, const CellArray<double>& v,
                                       const Grid& grid, const PhysicalParams& params) {
  CoriolisPrimitives cp{CellArray<double>(grid, 0.0), CellArray<double>(grid, 0.0)};
  if (params.f == 0.0) return cp;
  const double scale = params.f / params.g * grid.hbar;
  const int gh = grid.ghost;
  for (int j = -gh; j < grid.ny + gh; ++j) {
    for (int i = 1; i < grid.nx + gh; ++i) {
      cp.V(i, j) = cp.V(i - 1, j) + scale * 0.5 * (v(i - 1, j) + v(i, j));
    }
    for (int i = -1; i >= -gh; --i) {
      cp.V(i, j) = cp.V(i + 1, j) - scale * 0.5 * (v(i, j) + v(i + 1, j));
    }
  }
  for (int i = -gh; i < grid.nx + gh; ++i) {
    for (int j = 1; j < grid.ny + gh; ++j) {
      cp.U(i, j) = cp.U(i, j - 1) + scale * 0.5 * (u(i, j - 1) + u(i, j));
    }
    for (int j = -1; j >= -gh; --j) {
      cp.U(i, j) = cp.U(i, j + 1) - scale * 0.5 * (u(i, j) + u(i, j + 1));
    }
  }
  return cp;
}

void half_step_coriolis_primitives(PredictedStates& ps, const PhysicalParams& params) {
  const Grid& grid = ps.grid;
  const double scale = params.f / params.g * grid.hbar;
  auto row = [&](NodeKind kind, int J) {
    EdgeNode prev{kind, 0, J};
    ps.V_hat.at(prev) = 0.0;
    for (int I = 1; I <= grid.nx; ++I) {
      const EdgeNode cur{kind, I, J};
      ps.V_hat.at(cur) = ps.V_hat.at(prev) + scale * 0.5 * (ps.state.at(prev).v + ps.state.at(cur).v);
      prev = cur;
    }
  };
  for (int J = 0; J <= grid.ny; ++J) row(NodeKind::vertex, J);
  for (int j = 0; j < grid.ny; ++j) row(NodeKind::vertical_edge, j);

  auto column = [&](NodeKind kind, int I) {
    EdgeNode prev{kind, I, 0};
    ps.U_hat.at(prev) = 0.0;
    for (int J = 1; J <= grid.ny; ++J) {
      const EdgeNode cur{kind, I, J};
      ps.U_hat.at(cur) = ps.U_hat.at(prev) + scale * 0.5 * (ps.state.at(prev).u + ps.state.at(cur).u);
      prev = cur;
    }
  };
  for (int I = 0; I <= grid.nx; ++I) column(NodeKind::vertex, I);
  for (int i = 0; i < grid.nx; ++i) column(NodeKind::horizontal_edge, i);
}

EdgeFluxes edge_fluxes(const PredictedStates& ps, const PhysicalParams& params) {
  const Grid& grid = ps.grid;
  EdgeFluxes out{grid.nx, grid.ny, {}, {}};
  out.x_faces.resize(static_cast<std::size_t>(grid.nx + 1) * grid.ny);
  out.y_faces.resize(static_cast<std::size_t>(grid.nx) * (grid.ny + 1));

  auto check = [](const PredictedPrimitive& p) {
    if (!(p.h > 0.0)) throw DryStateError("dry predicted state on an edge");
    return PrimitiveState{p.h, p.u, p.v};
  };
  auto simpson = [&](const PredictedPrimitive& a, const PredictedPrimitive& m,
                     const PredictedPrimitive& b, Axis axis) {
    const FluxTriple fa = physical_flux(check(a), axis, params);
    const FluxTriple fm = physical_flux(check(m), axis, params);
    const FluxTriple fb = physical_flux(check(b), axis, params);
    return FluxTriple{kSimpsonEnd * fa.mass + kSimpsonMid * fm.mass + kSimpsonEnd * fb.mass,
                      kSimpsonEnd * fa.momentum_x + kSimpsonMid * fm.momentum_x + kSimpsonEnd * fb.momentum_x,
                      kSimpsonEnd * fa.momentum_y + kSimpsonMid * fm.momentum_y + kSimpsonEnd * fb.momentum_y};
  };

  for (int j = 0; j < grid.ny; ++j) {
    for (int I = 0; I <= grid.nx; ++I) {
      out.x_faces[static_cast<std::size_t>(j) * (grid.nx + 1) + I] =
          simpson(ps.state.at({NodeKind::vertex, I, j}), ps.state.at({NodeKind::vertical_edge, I, j}),
                  ps.state.at({NodeKind::vertex, I, j + 1}), Axis::x);
    }
  }
  for (int J = 0; J <= grid.ny; ++J) {
    for (int i = 0; i < grid.nx; ++i) {
      out.y_faces[static_cast<std::size_t>(J) * grid.nx + i] =
          simpson(ps.state.at({NodeKind::vertex, i, J}), ps.state.at({NodeKind::horizontal_edge, i, J}),
                  ps.state.at({NodeKind::vertex, i + 1, J}), Axis::y);
    }
  }
  return out;
}

std::vector<FluxTriple> source_term(const PredictedStates& ps, const PhysicalParams& params) {
  const Grid& grid = ps.grid;
  std::vector<FluxTriple> out(static_cast<std::size_t>(grid.nx) * grid.ny);
  const double g = params.g;

  // (mu h)(delta (b - V_hat)) between the west and east nodes of one row
  auto x_term = [&](const EdgeNode& w, const EdgeNode& e) {
    const double mu_h = 0.5 * (ps.state.at(w).h + ps.state.at(e).h);
    const double delta = (ps.b.at(e) - ps.V_hat.at(e)) - (ps.b.at(w) - ps.V_hat.at(w));
    return mu_h * delta;
  };
  auto y_term = [&](const EdgeNode& s, const EdgeNode& n) {
    const double mu_h = 0.5 * (ps.state.at(s).h + ps.state.at(n).h);
    const double delta = (ps.b.at(n) + ps.U_hat.at(n)) - (ps.b.at(s) + ps.U_hat.at(s));
    return mu_h * delta;
  };

  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double sx = kSimpsonEnd * x_term({NodeKind::vertex, i, j}, {NodeKind::vertex, i + 1, j}) +
                        kSimpsonMid * x_term({NodeKind::vertical_edge, i, j}, {NodeKind::vertical_edge, i + 1, j}) +
                        kSimpsonEnd * x_term({NodeKind::vertex, i, j + 1}, {NodeKind::vertex, i + 1, j + 1});
      const double sy = kSimpsonEnd * y_term({NodeKind::vertex, i, j}, {NodeKind::vertex, i, j + 1}) +
                        kSimpsonMid * y_term({NodeKind::horizontal_edge, i, j}, {NodeKind::horizontal_edge, i, j + 1}) +
                        kSimpsonEnd * y_term({NodeKind::vertex, i + 1, j}, {NodeKind::vertex, i + 1, j + 1});
      out[static_cast<std::size_t>(j) * grid.nx + i] = FluxTriple{0.0, -g * sx, -g * sy};
    }
  }
  return out;
}

ConservedField fv_update(const ConservedField& field, const EdgeFluxes& fluxes,
                         const std::vector<FluxTriple>& source, const StepContext& ctx) {
  const Grid& grid = field.grid;
  ConservedField out = field;
  out.time = field.time + ctx.dt;
  const double lambda = ctx.lambda;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const FluxTriple& fw = fluxes.x_face(i, j);
      const FluxTriple& fe = fluxes.x_face(i + 1, j);
      const FluxTriple& fs = fluxes.y_face(i, j);
      const FluxTriple& fn = fluxes.y_face(i, j + 1);
      const FluxTriple& b = source[static_cast<std::size_t>(j) * grid.nx + i];
      ConservedState& s = out.cells(i, j);
      s.h += -lambda * ((fe.mass - fw.mass) + (fn.mass - fs.mass)) + lambda * b.mass;
      s.hu += -lambda * ((fe.momentum_x - fw.momentum_x) + (fn.momentum_x - fs.momentum_x)) +
              lambda * b.momentum_x;
      s.hv += -lambda * ((fe.momentum_y - fw.momentum_y) + (fn.momentum_y - fs.momentum_y)) +
              lambda * b.momentum_y;
      if (!(s.h > 0.0)) throw DryStateError("finite volume update produced a dry cell");
    }
  }
  return out;
}

CellSnapshot make_snapshot(const ConservedField& field, const Bathymetry& bathymetry,
                           const PhysicalParams& params) {
  const Grid& grid = field.grid;
  CellSnapshot snap(grid);
  for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
    for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
      const PrimitiveState w = to_primitive(field.cells(i, j));
      snap.h(i, j) = w.h;
      snap.u(i, j) = w.u;
      snap.v(i, j) = w.v;
      snap.b(i, j) = bathymetry.b(i, j);
    }
  }
  CoriolisPrimitives cp = coriolis_primitives(snap.u, snap.v, grid, params);
  snap.U = std::move(cp.U);
  snap.V = std::move(cp.V);
  return snap;
}

PredictedStates predict_all(const PredictorInput& input, double tau, const PhysicalParams& params,
                            const EvolutionOptions& opts) {
  const Grid& grid = input.cells.grid;
  PredictedStates ps(grid);
  auto visit = [&](const EdgeNode& node) {
    ps.state.at(node) = predict(node, input, tau, params, opts);
    ps.b.at(node) = bottom_at_node(node, input.rec);
  };
  for (int J = 0; J <= grid.ny; ++J) {
    for (int I = 0; I <= grid.nx; ++I) visit({NodeKind::vertex, I, J});
  }
  for (int j = 0; j < grid.ny; ++j) {
    for (int I = 0; I <= grid.nx; ++I) visit({NodeKind::vertical_edge, I, j});
  }
  for (int J = 0; J <= grid.ny; ++J) {
    for (int i = 0; i < grid.nx; ++i) visit({NodeKind::horizontal_edge, i, J});
  }
  half_step_coriolis_primitives(ps, params);
  return ps;
}

ConservedField step_with(const ConservedField& field, const Bathymetry& bathymetry,
                         const SchemeConfig& config, const StepContext& ctx, StepRecord* record) {
  const CellSnapshot snap = make_snapshot(field, bathymetry, config.params);
  const PredictorInput input = make_predictor_input(snap, config.order, config.limiter);
  const PredictedStates ps = predict_all(input, ctx.tau, config.params, config.evolution);
  const EdgeFluxes fluxes = edge_fluxes(ps, config.params);
  const std::vector<FluxTriple> source = source_term(ps, config.params);
  ConservedField next = fv_update(field, fluxes, source, ctx);
  apply_boundary(next, config.bc);

  if (record) {
    record->dt = ctx.dt;
    record->time = next.time;
    record->h_min = std::numeric_limits<double>::infinity();
    record->h_max = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < next.grid.ny; ++j) {
      for (int i = 0; i < next.grid.nx; ++i) {
        record->h_min = std::min(record->h_min, next.cells(i, j).h);
        record->h_max = std::max(record->h_max, next.cells(i, j).h);
      }
    }
  }
  return next;
}

ConservedField step(const ConservedField& field, const Bathymetry& bathymetry,
                    const SchemeConfig& config, StepRecord* record, std::optional<double> t_end) {
  const StepContext ctx = compute_dt(field, config.cfl, config.params, t_end);
  ConservedField next = step_with(field, bathymetry, config, ctx, record);
  if (t_end && ctx.dt == *t_end - field.time) {
    next.time = *t_end;
    if (record) record->time = *t_end;
  }
  return next;
}

}  // namespace fveg
