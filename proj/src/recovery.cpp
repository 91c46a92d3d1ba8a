#include "fveg/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fveg {

namespace {

double sign(double a) { return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0); }

// Sum of four values grouped pairwise, exact for equal inputs.
double mean4(double a, double b, double c, double d) { return ((a + b) + (c + d)) * 0.25; }

CellBilinear from_vertices(double ll, double lr, double ul, double ur) {
  CellBilinear q;
  q.c00 = mean4(ll, lr, ul, ur);
  q.cx = 0.5 * ((lr - ll) + (ur - ul));
  q.cy = 0.5 * ((ul - ll) + (ur - lr));
  q.cxy = (ll - lr) - (ul - ur);
  return q;
}

bool slopes_disagree(double unlimited, double limited, double scale) {
  const double tol = 1e-13 * std::max(1.0, scale);
  if (std::abs(unlimited) <= tol && std::abs(limited) <= tol) return false;
  if (unlimited * limited < 0.0) return true;
  const double a = std::abs(unlimited);
  const double b = std::abs(limited);
  return a > 2.0 * b || b > 2.0 * a;
}

CellBilinear subtract(const CellBilinear& a, const CellBilinear& b) {
  return {a.c00 - b.c00, a.cx - b.cx, a.cy - b.cy, a.cxy - b.cxy};
}

// Range of cells that have a full 3x3 neighbourhood inside the padded array.
struct InnerRange {
  int i_begin, i_end, j_begin, j_end;
};

InnerRange inner_range(const Grid& grid) {
  return {-grid.ghost + 1, grid.nx + grid.ghost - 1, -grid.ghost + 1, grid.ny + grid.ghost - 1};
}

}  // namespace

Limiter parse_limiter(std::string_view name) {
  if (name == "none") return Limiter::none;
  if (name == "minmod") return Limiter::minmod;
  if (name == "mc") return Limiter::mc;
  throw ConfigurationError("unknown limiter '" + std::string(name) + "'");
}

std::string_view to_string(Limiter kind) {
  switch (kind) {
    case Limiter::none: return "none";
    case Limiter::minmod: return "minmod";
    case Limiter::mc: return "mc";
  }
  return "none";
}

double limit_slope(Limiter kind, double a, double b) {
  if (a * b <= 0.0) return 0.0;
  const double s = sign(a);
  switch (kind) {
    case Limiter::minmod:
      return s * std::min(std::abs(a), std::abs(b));
    case Limiter::mc:
      return s * std::min({2.0 * std::abs(a), 2.0 * std::abs(b), 0.5 * std::abs(a + b)});
    case Limiter::none:
      return 0.5 * (a + b);
  }
  return 0.0;
}

CellArray<CellBilinear> recover_continuous(const CellArray<double>& q, const Grid& grid) {
  CellArray<CellBilinear> out(grid);
  for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
    for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
      out(i, j) = CellBilinear{q(i, j), 0.0, 0.0, 0.0};
    }
  }
  // vertex (I, J) sits at the lower-left corner of cell (I, J)
  const int vnx = grid.padded_nx() - 1;
  const int vny = grid.padded_ny() - 1;
  std::vector<double> vertex(static_cast<std::size_t>(vnx) * vny);
  auto vidx = [&](int I, int J) {
    return static_cast<std::size_t>(J + grid.ghost - 1) * vnx + static_cast<std::size_t>(I + grid.ghost - 1);
  };
  for (int J = -grid.ghost + 1; J < grid.ny + grid.ghost; ++J) {
    for (int I = -grid.ghost + 1; I < grid.nx + grid.ghost; ++I) {
      vertex[vidx(I, J)] = mean4(q(I - 1, J - 1), q(I, J - 1), q(I - 1, J), q(I, J));
    }
  }
  const InnerRange r = inner_range(grid);
  for (int j = r.j_begin; j < r.j_end; ++j) {
    for (int i = r.i_begin; i < r.i_end; ++i) {
      out(i, j) = from_vertices(vertex[vidx(i, j)], vertex[vidx(i + 1, j)], vertex[vidx(i, j + 1)],
                                vertex[vidx(i + 1, j + 1)]);
    }
  }
  return out;
}

CellArray<double> residual_field(const CellArray<double>& q, const Grid& grid) {
  CellArray<double> out(grid, 0.0);
  const InnerRange r = inner_range(grid);
  for (int j = r.j_begin; j < r.j_end; ++j) {
    for (int i = r.i_begin; i < r.i_end; ++i) {
      auto row = [&](int jj) { return (q(i - 1, jj) + 2.0 * q(i, jj)) + q(i + 1, jj); };
      const double smoothed = ((row(j - 1) + 2.0 * row(j)) + row(j + 1)) / 16.0;
      out(i, j) = q(i, j) - smoothed;
    }
  }
  return out;
}

CellArray<double> conservation_defect(const CellArray<double>& q,
                                      const CellArray<CellBilinear>& recovered,
                                      const Grid& grid) {
  CellArray<double> out(grid, 0.0);
  for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
    for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
      out(i, j) = q(i, j) - recovered(i, j).mean();
    }
  }
  return out;
}

Reconstruction recover(const CellSnapshot& data, Limiter limiter) {
  const Grid& grid = data.grid;
  Reconstruction rec(grid);
  rec.b = recover_continuous(data.b, grid);
  rec.U = recover_continuous(data.U, grid);
  rec.V = recover_continuous(data.V, grid);
  rec.u = recover_continuous(data.u, grid);
  rec.v = recover_continuous(data.v, grid);

  CellArray<double> surface(grid);
  for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
    for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
      surface(i, j) = data.surface(i, j);
    }
  }
  rec.surface = recover_continuous(surface, grid);

  if (limiter != Limiter::none) {
    const InnerRange r = inner_range(grid);
    for (int j = r.j_begin; j < r.j_end; ++j) {
      for (int i = r.i_begin; i < r.i_end; ++i) {
        bool any_limited = false;

        auto limit_plain = [&](const CellArray<double>& q, CellBilinear& out) {
          const double sx = limit_slope(limiter, q(i, j) - q(i - 1, j), q(i + 1, j) - q(i, j));
          const double sy = limit_slope(limiter, q(i, j) - q(i, j - 1), q(i, j + 1) - q(i, j));
          const double scale = std::abs(q(i, j));
          if (slopes_disagree(out.cx, sx, scale) || slopes_disagree(out.cy, sy, scale)) {
            out = CellBilinear{q(i, j), sx, sy, 0.0};
            any_limited = true;
          }
        };
        limit_plain(data.u, rec.u(i, j));
        limit_plain(data.v, rec.v(i, j));

        // free surface: limit K ~ h + b - V across x and L ~ h + b + U across y
        auto k_pot = [&](int ii, int jj) { return surface(ii, jj) - data.V(ii, jj); };
        auto l_pot = [&](int ii, int jj) { return surface(ii, jj) + data.U(ii, jj); };
        const double sx = rec.V(i, j).cx +
                          limit_slope(limiter, k_pot(i, j) - k_pot(i - 1, j), k_pot(i + 1, j) - k_pot(i, j));
        const double sy = -rec.U(i, j).cy +
                          limit_slope(limiter, l_pot(i, j) - l_pot(i, j - 1), l_pot(i, j + 1) - l_pot(i, j));
        CellBilinear& eta = rec.surface(i, j);
        const double scale = std::abs(surface(i, j));
        if (slopes_disagree(eta.cx, sx, scale) || slopes_disagree(eta.cy, sy, scale)) {
          eta = CellBilinear{surface(i, j), sx, sy, 0.0};
          any_limited = true;
        }
        rec.limited(i, j) = any_limited ? 1 : 0;
      }
    }
  }

  for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
    for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
      rec.h(i, j) = subtract(rec.surface(i, j), rec.b(i, j));
    }
  }
  return rec;
}

double eval_reconstruction(const CellArray<CellBilinear>& recon, CellIndex cell, double xi,
                           double eta) {
  constexpr double half = 0.5 + 1e-12;
  if (std::abs(xi) > half || std::abs(eta) > half) {
    throw ConfigurationError("local coordinates outside the cell");
  }
  return recon(cell).at(xi, eta);
}

}  // namespace fveg
