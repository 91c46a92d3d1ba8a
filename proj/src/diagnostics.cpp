#include "fveg/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace fveg {

namespace {

int refinement_factor(const Grid& fine, const Grid& coarse) {
  if (fine.nx % coarse.nx != 0 || fine.ny % coarse.ny != 0) {
    throw ConfigurationError("reference grid is not an integer refinement of the field grid");
  }
  const int r = fine.nx / coarse.nx;
  if (fine.ny / coarse.ny != r) throw ConfigurationError("reference grid refinement differs between axes");
  const double tol = 1e-12 * std::max({1.0, std::abs(coarse.x_extent()), std::abs(coarse.y_extent())});
  if (std::abs(fine.hbar * r - coarse.hbar) > tol || std::abs(fine.x0 - coarse.x0) > tol ||
      std::abs(fine.y0 - coarse.y0) > tol) {
    throw ConfigurationError("reference grid covers a different region");
  }
  return r;
}

}  // namespace

ConservedField restrict_to(const ConservedField& fine, const Grid& coarse) {
  const int r = refinement_factor(fine.grid, coarse);
  ConservedField out(coarse);
  out.time = fine.time;
  const double w = 1.0 / (static_cast<double>(r) * r);
  for (int j = 0; j < coarse.ny; ++j) {
    for (int i = 0; i < coarse.nx; ++i) {
      ConservedState sum;
      for (int b = 0; b < r; ++b) {
        for (int a = 0; a < r; ++a) {
          const ConservedState& q = fine.cells(i * r + a, j * r + b);
          sum.h += q.h;
          sum.hu += q.hu;
          sum.hv += q.hv;
        }
      }
      out.cells(i, j) = {sum.h * w, sum.hu * w, sum.hv * w};
    }
  }
  return out;
}

VariableErrors l1_error(const ConservedField& field, const ConservedField& reference) {
  const Grid& grid = field.grid;
  const ConservedField ref = reference.grid.nx == grid.nx && reference.grid.ny == grid.ny
                                 ? reference
                                 : restrict_to(reference, grid);
  refinement_factor(ref.grid, grid);
  VariableErrors e;
  const double area = grid.hbar * grid.hbar;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const ConservedState& a = field.cells(i, j);
      const ConservedState& b = ref.cells(i, j);
      e.h += std::abs(a.h - b.h);
      e.hu += std::abs(a.hu - b.hu);
      e.hv += std::abs(a.hv - b.hv);
    }
  }
  return {e.h * area, e.hu * area, e.hv * area};
}

std::optional<double> eoc(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) return std::nullopt;
  return std::log2(e_coarse / e_fine);
}

std::optional<VariableErrors> eoc(const VariableErrors& coarse, const VariableErrors& fine) {
  const auto h = eoc(coarse.h, fine.h);
  const auto hu = eoc(coarse.hu, fine.hu);
  const auto hv = eoc(coarse.hv, fine.hv);
  if (!h || !hu || !hv) return std::nullopt;
  return VariableErrors{*h, *hu, *hv};
}

void fill_eoc(ErrorReport& report) {
  report.eoc.assign(report.errors.size(), std::nullopt);
  for (std::size_t k = 1; k < report.errors.size(); ++k) {
    if (report.resolutions[k] != 2 * report.resolutions[k - 1]) continue;
    report.eoc[k] = eoc(report.errors[k - 1], report.errors[k]);
  }
}

LakeAtRestResidual lake_at_rest_residual(const ConservedField& field, const Bathymetry& bathymetry) {
  const Grid& grid = field.grid;
  double sum = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) sum += field.cells(i, j).h + bathymetry.b(i, j);
  }
  const double level = sum / (static_cast<double>(grid.nx) * grid.ny);
  LakeAtRestResidual r;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const ConservedState& q = field.cells(i, j);
      r.surface = std::max(r.surface, std::abs(q.h + bathymetry.b(i, j) - level));
      r.hu = std::max(r.hu, std::abs(q.hu));
      r.hv = std::max(r.hv, std::abs(q.hv));
    }
  }
  return r;
}

double geostrophic_residual(const ConservedField& field, const Bathymetry& bathymetry,
                            const PhysicalParams& params) {
  const Grid& grid = field.grid;
  auto eta = [&](int i, int j) { return field.cells(i, j).h + bathymetry.b(i, j); };
  double sum = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const ConservedState& q = field.cells(i, j);
      const double v = q.hv / q.h;
      const double dx = (eta(i + 1, j) - eta(i - 1, j)) / (2.0 * grid.hbar);
      sum += std::abs(params.f * v - params.g * dx);
    }
  }
  return sum * grid.hbar * grid.hbar;
}

PredictedPrimitive taylor_predict(Point2 apex, const SmoothField& field, const LinearizationState& lin,
                                  double tau, const PhysicalParams& params) {
  const double g = params.g;
  const double f = params.f;
  const SmoothSample s = field({apex.x - tau * lin.u, apex.y - tau * lin.v});
  const Jet2& h = s.h;
  const Jet2& u = s.u;
  const Jet2& v = s.v;
  const Jet2& b = s.b;

  const double K_x = g * (h.dx + b.dx) - f * v.value;
  const double L_y = g * (h.dy + b.dy) + f * u.value;
  const double K_xx = g * (h.dxx + b.dxx) - f * v.dx;
  const double L_yy = g * (h.dyy + b.dyy) + f * u.dy;
  const double div = u.dx + v.dy;
  const double div_x = u.dxx + v.dxy;
  const double div_y = u.dxy + v.dyy;
  const double adv_x = lin.u * b.dxx + lin.v * b.dxy;
  const double adv_y = lin.u * b.dxy + lin.v * b.dyy;
  const double half_tau2 = 0.5 * tau * tau;

  return {h.value - tau * lin.h * div + half_tau2 * lin.h * (K_xx + L_yy),
          u.value - tau * K_x + half_tau2 * (g * lin.h * div_x - g * adv_x + f * L_y),
          v.value - tau * L_y + half_tau2 * (g * lin.h * div_y - g * adv_y - f * K_x)};
}

}  // namespace fveg
