#include "fveg/evolution.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace fveg {

namespace {

constexpr double kPi = std::numbers::pi;

FourierIntegrals piece_integrals(double t0, double t1, const EvolutionOptions& opts) {
  return opts.angular_samples > 0 ? sampled_fourier_integrals(t0, t1, opts.angular_samples)
                                   : fourier_integrals(t0, t1);
}

// Candidate cells along one axis for a coordinate that may sit on a grid line.
int axis_candidates(double s, double origin, double hbar, std::array<int, 2>& out) {
  constexpr double tol = 1e-12;
  const double t = (s - origin) / hbar;
  const double k = std::floor(t);
  const double frac = t - k;
  const int ki = static_cast<int>(k);
  if (frac < tol) {
    out = {ki - 1, ki};
    return 2;
  }
  if (frac > 1.0 - tol) {
    out = {ki, ki + 1};
    return 2;
  }
  out = {ki, ki};
  return 1;
}

// Value of a recovered field at an arbitrary point; on grid lines the one-sided
// limits of all touching cells are averaged.
double eval_at_point(const CellArray<CellBilinear>& f, Point2 q, const Grid& grid) {
  std::array<int, 2> xs{}, ys{};
  const int nx = axis_candidates(q.x, grid.x0, grid.hbar, xs);
  const int ny = axis_candidates(q.y, grid.y0, grid.hbar, ys);
  double sum = 0.0;
  for (int a = 0; a < ny; ++a) {
    for (int b = 0; b < nx; ++b) {
      const int i = xs[b];
      const int j = ys[a];
      if (!grid.in_padded(i, j)) throw ConfigurationError("evaluation point outside padded domain");
      sum += f(i, j).at((q.x - grid.x_center(i)) / grid.hbar, (q.y - grid.y_center(j)) / grid.hbar);
    }
  }
  return sum / (nx * ny);
}

// Circle averages over one piece of 1, cos, sin and sin(2 theta), each times
// the kernels 1, cos, sin, cos(2 theta) and sin(2 theta).
struct WeightedPiece {
  CellIndex cell;
  double sgn_cos = 0.0;
  double sgn_sin = 0.0;
  std::array<double, 4> one{}, cos{}, sin{}, cos2{}, sin2{};
};

std::vector<WeightedPiece> weigh_pieces(const SonicCircleTrace& trace, const EvolutionOptions& opts) {
  std::vector<WeightedPiece> out;
  out.reserve(trace.sectors.size() + 4);
  for_each_piece(trace, [&](double t0, double t1, CellIndex c, double sc, double ss) {
    const FourierIntegrals F = piece_integrals(t0, t1, opts);
    const auto& C = F.c;
    const auto& S = F.s;
    WeightedPiece w;
    w.cell = c;
    w.sgn_cos = sc;
    w.sgn_sin = ss;
    w.one = {C[0], C[1], S[1], S[2]};
    w.cos = {C[1], 0.5 * (C[0] + C[2]), 0.5 * S[2], 0.5 * (S[1] + S[3])};
    w.sin = {S[1], 0.5 * S[2], 0.5 * (C[0] - C[2]), 0.5 * (C[1] - C[3])};
    w.cos2 = {C[2], 0.5 * (C[1] + C[3]), 0.5 * (S[3] - S[1]), 0.5 * S[4]};
    w.sin2 = {S[2], 0.5 * (S[1] + S[3]), 0.5 * (C[1] - C[3]), 0.5 * (C[0] - C[4])};
    out.push_back(w);
  });
  return out;
}

double dot(const std::array<double, 4>& p, const std::array<double, 4>& w) {
  return p[0] * w[0] + p[1] * w[1] + p[2] * w[2] + p[3] * w[3];
}

// Coefficients of 1, cos, sin, sin(2 theta) of a bilinear on the circle.
struct CircleFrame {
  double xi0, eta0, rho;
  std::array<double, 4> operator()(const CellBilinear& q) const {
    return {q.at(xi0, eta0), (q.cx + q.cxy * eta0) * rho, (q.cy + q.cxy * xi0) * rho,
            0.5 * q.cxy * rho * rho};
  }
};

CircleFrame frame(const SonicCircle& circle, CellIndex c, const Grid& grid) {
  return {(circle.center.x - grid.x_center(c.i)) / grid.hbar,
          (circle.center.y - grid.y_center(c.j)) / grid.hbar, circle.radius / grid.hbar};
}

PredictedPrimitive const_on_pieces(const std::vector<WeightedPiece>& pieces, const CellSnapshot& data,
                                   const BottomSlopes* slopes, double b_at_node,
                                   const LinearizationState& lin, double tau,
                                   const PhysicalParams& params) {
  double surface = 0.0, u_sgn = 0.0, v_sgn = 0.0, advect = 0.0;
  double k_sgn = 0.0, u_cos2 = 0.0, u_one = 0.0, v_sc = 0.0;
  double l_sgn = 0.0, u_sc = 0.0, v_sin2 = 0.0, v_one = 0.0;

  for (const WeightedPiece& p : pieces) {
    const CellIndex c = p.cell;
    const double w = p.one[0];
    const double w_cos2 = 0.5 * (p.one[0] + p.cos2[0]);
    const double w_sin2 = 0.5 * (p.one[0] - p.cos2[0]);
    const double w_sc = 0.5 * p.sin2[0];

    const double h = data.h(c), u = data.u(c), v = data.v(c), b = data.b(c);
    const double K = params.g * (h + b - data.V(c));
    const double L = params.g * (h + b + data.U(c));

    surface += (h + b) * w;
    u_sgn += u * p.sgn_cos * w;
    v_sgn += v * p.sgn_sin * w;
    if (slopes) advect += (lin.u * slopes->bx(c) + lin.v * slopes->by(c)) * w;

    k_sgn += K * p.sgn_cos * w;
    u_cos2 += u * w_cos2;
    u_one += u * w;
    v_sc += v * w_sc;

    l_sgn += L * p.sgn_sin * w;
    u_sc += u * w_sc;
    v_sin2 += v * w_sin2;
    v_one += v * w;
  }

  PredictedPrimitive out;
  out.h = -b_at_node + surface - lin.c / params.g * (u_sgn + v_sgn) + tau * advect;
  out.u = -k_sgn / lin.c + u_cos2 + 0.5 * u_one + v_sc;
  out.v = -l_sgn / lin.c + u_sc + v_sin2 + 0.5 * v_one;
  return out;
}

PredictedPrimitive bilin_on_pieces(const std::vector<WeightedPiece>& pieces, const SonicCircle& circle,
                                   Point2 apex, const Reconstruction& rec,
                                   const LinearizationState& lin, double tau,
                                   const PhysicalParams& params) {
  const Grid& grid = rec.grid;
  const double g = params.g;

  double surface = 0.0, u_cos = 0.0, v_sin = 0.0, advect = 0.0;
  double k_cos = 0.0, u_cos2 = 0.0, v_sc = 0.0, u_one = 0.0;
  double l_sin = 0.0, u_sc = 0.0, v_sin2 = 0.0, v_one = 0.0;

  for (const WeightedPiece& p : pieces) {
    const CellIndex c = p.cell;
    const CircleFrame on = frame(circle, c, grid);
    const CellBilinear& s = rec.surface(c);
    const CellBilinear& U = rec.U(c);
    const CellBilinear& V = rec.V(c);
    const auto eta = on(s);
    const auto u = on(rec.u(c));
    const auto v = on(rec.v(c));
    const auto K = on({g * (s.c00 - V.c00), g * (s.cx - V.cx), g * (s.cy - V.cy), g * (s.cxy - V.cxy)});
    const auto L = on({g * (s.c00 + U.c00), g * (s.cx + U.cx), g * (s.cy + U.cy), g * (s.cxy + U.cxy)});

    // b_x = (cx + cxy eta) / hbar and b_y = (cy + cxy xi) / hbar along the circle
    const CellBilinear& b = rec.b(c);
    const std::array<double, 4> bx = {(b.cx + b.cxy * on.eta0) / grid.hbar, 0.0, b.cxy * on.rho / grid.hbar, 0.0};
    const std::array<double, 4> by = {(b.cy + b.cxy * on.xi0) / grid.hbar, b.cxy * on.rho / grid.hbar, 0.0, 0.0};

    const double u1 = dot(u, p.one);
    const double u_c2 = dot(u, p.cos2);
    const double v1 = dot(v, p.one);
    const double v_c2 = dot(v, p.cos2);

    surface += dot(eta, p.one);
    u_cos += dot(u, p.cos);
    v_sin += dot(v, p.sin);
    advect += lin.u * dot(bx, p.one) + lin.v * dot(by, p.one);

    k_cos += dot(K, p.cos);
    u_cos2 += 0.5 * (u1 + u_c2);
    v_sc += 0.5 * dot(v, p.sin2);
    u_one += u1;

    l_sin += dot(L, p.sin);
    u_sc += 0.5 * dot(u, p.sin2);
    v_sin2 += 0.5 * (v1 - v_c2);
    v_one += v1;
  }

  const double eta_q0 = eval_at_point(rec.surface, circle.center, grid);
  const double u_q0 = eval_at_point(rec.u, circle.center, grid);
  const double v_q0 = eval_at_point(rec.v, circle.center, grid);
  const double b_p = eval_at_point(rec.b, apex, grid);

  // (1/4) * integral over [0, 2 pi] equals (pi / 2) times the circle average
  constexpr double quarter = 0.5 * kPi;
  PredictedPrimitive out;
  out.h = -b_p + eta_q0 + quarter * (surface - eta_q0) - 2.0 * lin.c / g * (u_cos + v_sin) +
          tau * advect;
  out.u = u_q0 - 2.0 / lin.c * k_cos +
          quarter * (3.0 * u_cos2 + 3.0 * v_sc - u_one - 0.5 * u_q0);
  out.v = v_q0 - 2.0 / lin.c * l_sin +
          quarter * (3.0 * u_sc + 3.0 * v_sin2 - v_one - 0.5 * v_q0);
  return out;
}

}  // namespace

Point2 node_position(const EdgeNode& node, const Grid& grid) {
  switch (node.kind) {
    case NodeKind::vertex: return {grid.x_line(node.I), grid.y_line(node.J)};
    case NodeKind::vertical_edge: return {grid.x_line(node.I), grid.y_center(node.J)};
    case NodeKind::horizontal_edge: return {grid.x_center(node.I), grid.y_line(node.J)};
  }
  return {};
}

NodeCells adjacent_cells(const EdgeNode& node) {
  NodeCells nc;
  switch (node.kind) {
    case NodeKind::vertex:
      nc.cells = {CellIndex{node.I - 1, node.J - 1}, CellIndex{node.I, node.J - 1},
                  CellIndex{node.I - 1, node.J}, CellIndex{node.I, node.J}};
      nc.count = 4;
      break;
    case NodeKind::vertical_edge:
      nc.cells[0] = {node.I - 1, node.J};
      nc.cells[1] = {node.I, node.J};
      nc.count = 2;
      break;
    case NodeKind::horizontal_edge:
      nc.cells[0] = {node.I, node.J - 1};
      nc.cells[1] = {node.I, node.J};
      nc.count = 2;
      break;
  }
  return nc;
}

LinearizationState linearization_state(const EdgeNode& node, const CellSnapshot& data,
                                       const PhysicalParams& params) {
  const NodeCells nc = adjacent_cells(node);
  LinearizationState lin;
  for (int k = 0; k < nc.count; ++k) {
    const CellIndex c = nc.cells[k];
    if (!(data.h(c) > 0.0)) throw DryStateError("dry cell next to a quadrature node");
    lin.h += data.h(c);
    lin.u += data.u(c);
    lin.v += data.v(c);
  }
  lin.h /= nc.count;
  lin.u /= nc.count;
  lin.v /= nc.count;
  lin.c = std::sqrt(params.g * lin.h);
  return lin;
}

SonicCircle sonic_circle(Point2 at, const LinearizationState& lin, double tau) {
  return {{at.x - lin.u * tau, at.y - lin.v * tau}, lin.c * tau};
}

SonicCircleTrace trace_sonic_circle(const EdgeNode& node, const LinearizationState& lin,
                                    double tau, const Grid& grid) {
  return trace_sonic_circle(sonic_circle(node_position(node, grid), lin, tau), grid);
}

BottomSlopes bottom_slopes(const CellArray<CellBilinear>& recovered_b, const Grid& grid) {
  BottomSlopes s(grid);
  for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
    for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
      s.bx(i, j) = recovered_b(i, j).cx / grid.hbar;
      s.by(i, j) = recovered_b(i, j).cy / grid.hbar;
    }
  }
  return s;
}

PredictedPrimitive evolve_const(const EdgeNode& node, const CellSnapshot& data,
                                const BottomSlopes* slopes, double b_at_node,
                                const LinearizationState& lin, double tau,
                                const PhysicalParams& params, const EvolutionOptions& opts) {
  const SonicCircleTrace trace = trace_sonic_circle(node, lin, tau, data.grid);
  return const_on_pieces(weigh_pieces(trace, opts), data, slopes, b_at_node, lin, tau, params);
}

double bottom_at_node(const EdgeNode& node, const Reconstruction& rec) {
  return eval_at_point(rec.b, node_position(node, rec.grid), rec.grid);
}

PredictedPrimitive evolve_bilin(const EdgeNode& node, const Reconstruction& rec,
                                const LinearizationState& lin, double tau,
                                const PhysicalParams& params, const EvolutionOptions& opts) {
  const Point2 apex = node_position(node, rec.grid);
  const SonicCircle circle = sonic_circle(apex, lin, tau);
  const SonicCircleTrace trace = trace_sonic_circle(circle, rec.grid);
  return bilin_on_pieces(weigh_pieces(trace, opts), circle, apex, rec, lin, tau, params);
}

PredictorInput make_predictor_input(const CellSnapshot& cells, int order, Limiter limiter) {
  if (order != 1 && order != 2) throw ConfigurationError("scheme order must be 1 or 2");
  PredictorInput in;
  in.order = order;
  in.cells = cells;
  const Grid& grid = cells.grid;
  in.rec = recover(cells, order == 2 ? limiter : Limiter::none);
  in.slopes = bottom_slopes(in.rec.b, grid);
  if (order == 2) {
    CellArray<double> surface(grid);
    for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
      for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
        surface(i, j) = cells.surface(i, j);
      }
    }
    in.defect = CellSnapshot(grid);
    in.defect.h = conservation_defect(surface, in.rec.surface, grid);
    in.defect.u = conservation_defect(cells.u, in.rec.u, grid);
    in.defect.v = conservation_defect(cells.v, in.rec.v, grid);
    in.defect.U = conservation_defect(cells.U, in.rec.U, grid);
    in.defect.V = conservation_defect(cells.V, in.rec.V, grid);
  }
  return in;
}

PredictedPrimitive predict(const EdgeNode& node, const PredictorInput& input,
                           const LinearizationState& lin, double tau, const PhysicalParams& params,
                           const EvolutionOptions& opts) {
  const Grid& grid = input.cells.grid;
  const Point2 apex = node_position(node, grid);
  const SonicCircle circle = sonic_circle(apex, lin, tau);
  const std::vector<WeightedPiece> pieces = weigh_pieces(trace_sonic_circle(circle, grid), opts);
  PredictedPrimitive out;
  if (input.order == 1) {
    out = const_on_pieces(pieces, input.cells, &input.slopes, bottom_at_node(node, input.rec), lin,
                          tau, params);
  } else {
    const PredictedPrimitive bilin = bilin_on_pieces(pieces, circle, apex, input.rec, lin, tau, params);
    const PredictedPrimitive corr = const_on_pieces(pieces, input.defect, nullptr, 0.0, lin, tau, params);
    out = {bilin.h + corr.h, bilin.u + corr.u, bilin.v + corr.v};
  }
  if (!(out.h > 0.0)) throw DryStateError("predicted depth is not positive");
  return out;
}

PredictedPrimitive predict(const EdgeNode& node, const PredictorInput& input, double tau,
                           const PhysicalParams& params, const EvolutionOptions& opts) {
  return predict(node, input, linearization_state(node, input.cells, params), tau, params, opts);
}

}  // namespace fveg
