// Acceptance run: one PASS/FAIL line per criterion, extra measurements on
// lines starting with "  ". Exit status 1 if any criterion fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fveg/cli_io.hpp"
#include "fveg/diagnostics.hpp"
#include "fveg/fv_scheme.hpp"
#include "fveg/scenarios.hpp"
#include "oracles.hpp"

using namespace fveg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, bool ok, const std::string& what) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

__attribute__((format(printf, 1, 2))) void note(const char* fmt, ...) {
  std::va_list args;
  va_start(args, fmt);
  std::printf("  ");
  std::vprintf(fmt, args);
  std::printf("\n");
  std::fflush(stdout);
  va_end(args);
}

double max_change(const ConservedField& a, const ConservedField& b) {
  double m = 0;
  for (int j = 0; j < a.grid.ny; ++j)
    for (int i = 0; i < a.grid.nx; ++i) {
      m = std::max({m, std::abs(a.cells(i, j).h - b.cells(i, j).h),
                    std::abs(a.cells(i, j).hu - b.cells(i, j).hu),
                    std::abs(a.cells(i, j).hv - b.cells(i, j).hv)});
    }
  return m;
}

double max_h(const ConservedField& f) {
  double m = 0;
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) m = std::max(m, std::abs(f.cells(i, j).h));
  return m;
}

double total_mass(const ConservedField& f) {
  double m = 0;
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) m += f.cells(i, j).h;
  return m;
}

// max over row 0 of the central difference of v or h
double max_dx(const ConservedField& f, bool velocity) {
  auto q = [&](int i) { return velocity ? f.cells(i, 0).hv / f.cells(i, 0).h : f.cells(i, 0).h; };
  double m = 0;
  for (int i = 0; i < f.grid.nx; ++i) m = std::max(m, std::abs(q(i + 1) - q(i - 1)) / (2 * f.grid.hbar));
  return m;
}

SchemeConfig scheme_for(const Scenario& s, int order, Limiter limiter = Limiter::minmod, double cfl = 0.5) {
  SchemeConfig c;
  c.params = s.params;
  c.bc = s.bc;
  c.order = order;
  c.limiter = limiter;
  c.cfl = cfl;
  return c;
}

// ---------------------------------------------------------------------------
// 1, 2: lake at rest

void lake_at_rest(int id, const char* name) {
  const auto t0 = Clock::now();
  const Scenario s = make_scenario(name);
  const InitialData init = initialize(s, 20, 20);
  double worst = 0;
  for (int order : {1, 2}) {
    ConservedField f = init.field;
    for (double t : {0.2, 1.0, 10.0}) {
      f = integrate(f, init.bathymetry, scheme_for(s, order), t);
      const double e = l1_error(f, init.field).h;
      note("%s order %d t=%-4g L1(h)=%.3e", name, order, t, e);
      worst = std::max(worst, e);
    }
  }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s 20x20 max L1(h) %.2e <= 1e-13, %.2f s < 5 s", name, worst, secs);
  verdict(id, worst <= 1e-13 && secs < 5.0, buf);
}

// ---------------------------------------------------------------------------
// 3: discrete jet in the rotating frame

void jet() {
  const Grid g{100, 4, 0.2, -10.0, 0.0};
  const PhysicalParams p{1, 1};
  const InitialData init = discrete_jet_equilibrium(g, p, [](double x) { return 2 * jet_profile(x, 2.0); }, 1.0);
  Scenario s;
  s.params = p;
  double change[3] = {0, 0, 0};
  double secs = 0;
  for (int order : {1, 2}) {
    const auto t0 = Clock::now();
    ConservedField f = init.field;
    for (int k = 0; k < 100; ++k) f = step(f, init.bathymetry, scheme_for(s, order));
    change[order] = max_change(f, init.field);
    if (order == 1) secs = seconds_since(t0);
    note("jet order %d, 100 steps: max change %.3e (t=%.3f)", order, change[order], f.time);
  }
  note("order 2 is not exactly balanced on the discrete jet, see README");
  char buf[160];
  std::snprintf(buf, sizeof buf, "discrete jet, order 1, 100 steps: max change %.2e <= 1e-12, %.2f s < 10 s",
                change[1], secs);
  verdict(3, change[1] <= 1e-12 && secs < 10.0, buf);
}

// ---------------------------------------------------------------------------
// 4, 9: convergence ladder and the CFL 0.8 stability envelope

struct Ladder {
  ErrorReport report;
  double max_h = 0;
  bool completed = true;
  std::string error;
};

Ladder ladder(Limiter limiter, double cfl) {
  const Scenario s = make_scenario("accuracy_2d");
  Ladder out;
  std::vector<ConservedField> finals;
  const std::vector<int> ns = {25, 50, 100, 200};
  try {
    for (int n : ns) {
      const InitialData init = initialize(s, n, n);
      finals.push_back(integrate(init.field, init.bathymetry, scheme_for(s, 2, limiter, cfl), s.t_end));
      out.max_h = std::max(out.max_h, max_h(finals.back()));
    }
  } catch (const std::exception& e) {
    out.completed = false;
    out.error = e.what();
    return out;
  }
  for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
    out.report.resolutions.push_back(ns[k]);
    out.report.errors.push_back(l1_error(finals[k], finals[k + 1]));
  }
  fill_eoc(out.report);
  return out;
}

void print_ladder(const Ladder& l) {
  for (std::size_t k = 0; k < l.report.errors.size(); ++k) {
    const VariableErrors& e = l.report.errors[k];
    if (l.report.eoc[k]) {
      const VariableErrors& o = *l.report.eoc[k];
      note("N=%3d  h %.3e (%.2f)  hu %.3e (%.2f)  hv %.3e (%.2f)", l.report.resolutions[k], e.h, o.h, e.hu,
           o.hu, e.hv, o.hv);
    } else {
      note("N=%3d  h %.3e         hu %.3e         hv %.3e", l.report.resolutions[k], e.h, e.hu, e.hv);
    }
  }
}

void convergence_and_stability() {
  const auto t0 = Clock::now();
  const Scenario s = make_scenario("accuracy_2d");
  const double h0 = max_h(initialize(s, 200, 200).field);
  bool ok = true;
  double lo = 1e9, hi = -1e9;
  Ladder at_08;
  for (double cfl : {0.5, 0.8}) {
    const Ladder l = ladder(Limiter::none, cfl);
    if (cfl == 0.8) at_08 = l;
    note("continuous recovery, CFL %.1f, successive differences (EOC):", cfl);
    if (!l.completed) {
      note("failed: %s", l.error.c_str());
      ok = false;
      continue;
    }
    print_ladder(l);
    for (const auto& o : l.report.eoc) {
      if (!o) continue;
      for (double v : {o->h, o->hu, o->hv}) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  const double secs = seconds_since(t0);
  ok = ok && lo >= 1.8 && hi <= 2.5 && secs < 600.0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "accuracy_2d ladder 25-200, CFL 0.5 and 0.8: EOC in [%.2f, %.2f] within [1.8, 2.5], %.0f s < 600 s",
                lo, hi, secs);
  verdict(4, ok, buf);

  const Ladder m = ladder(Limiter::minmod, 0.8);
  note("minmod switch, CFL 0.8: %s, max|h| %.3f", m.completed ? "completed" : m.error.c_str(), m.max_h);
  if (m.completed) print_ladder(m);
  bool contracting = at_08.completed && at_08.report.errors.size() == 3;
  for (std::size_t k = 1; contracting && k < at_08.report.errors.size(); ++k)
    contracting = at_08.report.errors[k].h < at_08.report.errors[k - 1].h;
  std::snprintf(buf, sizeof buf,
                "accuracy_2d at CFL 0.8, order 2, N=25..200: %s, max|h| %.3f <= 2 x initial %.3f, differences %s",
                at_08.completed ? "completed" : "aborted", at_08.max_h, h0, contracting ? "shrink" : "do not shrink");
  verdict(9, contracting && at_08.max_h <= 2.0 * h0, buf);
}

// ---------------------------------------------------------------------------
// 5: small perturbation over the 1-D hump

void small_perturbation() {
  const auto t0 = Clock::now();
  const double eps = 0.01, t = 0.7;
  const Scenario s = make_scenario("lake_1d", {.eps = eps});
  const InitialData init = initialize(s, 100, 5);
  const ConservedField f = integrate(init.field, init.bathymetry, scheme_for(s, 2), t);
  const double secs = seconds_since(t0);
  // characteristic speeds range from sqrt(0.5) over the hump top to sqrt(1 + eps)
  const double c_lo = std::sqrt(0.5), c_hi = std::sqrt(1 + eps);
  const double r0 = 0.1 + c_lo * t - 0.05, r1 = 0.2 + c_hi * t + 0.05;
  const double l0 = 0.1 - c_hi * t - 0.05, l1 = 0.2 - c_lo * t + 0.05;
  double dev = 0, inside = 0;
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) {
      const double x = f.grid.x_center(i);
      const double d = std::abs(f.cells(i, j).h + init.bathymetry.b(i, j) - 1.0);
      if ((x >= r0 && x <= r1) || (x >= l0 && x <= l1)) inside = std::max(inside, d);
      else dev = std::max(dev, d);
    }
  note("excluded x in [%.3f, %.3f] and [%.3f, %.3f]; max |h+b-1| inside %.3e", r0, r1, l0, l1, inside);
  char buf[160];
  std::snprintf(buf, sizeof buf, "lake_1d eps=0.01 100x5 t=0.7: max |h+b-1| away from waves %.2e <= 1e-3, %.2f s < 10 s",
                dev, secs);
  verdict(5, dev <= eps / 10 && secs < 10.0, buf);
}

// ---------------------------------------------------------------------------
// 6: predictor against the streamline Taylor expansion

void predictor_consistency() {
  const auto t0 = Clock::now();
  const PhysicalParams p{1.0, 0.8};
  // globally bilinear data: the continuous recovery and the Coriolis
  // primitives are then exact
  const double h0 = 2, hx = 0.3, hy = -0.2, hxy = 0.4;
  const double b0 = 0.1, bx = 0.2, by = 0.1, bxy = -0.3;
  const double u0 = 0.3, ux = 0.5, v0 = -0.2, vy = 0.4;
  const SmoothField field = [=](Point2 q) {
    return SmoothSample{{h0 + hx * q.x + hy * q.y + hxy * q.x * q.y, hx + hxy * q.y, hy + hxy * q.x, 0, hxy, 0},
                        {u0 + ux * q.x, ux, 0, 0, 0, 0},
                        {v0 + vy * q.y, 0, vy, 0, 0, 0},
                        {b0 + bx * q.x + by * q.y + bxy * q.x * q.y, bx + bxy * q.y, by + bxy * q.x, 0, bxy, 0}};
  };
  const Grid g{20, 20, 0.05};
  ConservedField f(g);
  Bathymetry bath(g);
  for (int j = -2; j < 22; ++j)
    for (int i = -2; i < 22; ++i) {
      const SmoothSample q = field({g.x_center(i), g.y_center(j)});
      f.cells(i, j) = to_conserved({q.h.value, q.u.value, q.v.value});
      bath.b(i, j) = q.b.value;
    }
  const CellSnapshot snap = make_snapshot(f, bath, p);
  const PredictorInput in = make_predictor_input(snap, 2, Limiter::none);

  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> idx(3, 16), kind(0, 2);
  const double tau0 = 0.8 * g.hbar / (std::abs(u0) + 1.0 + std::sqrt(p.g * 3.0));
  double d1 = 0, d2 = 0, rmin = 1e9, rmax = 0;
  for (int k = 0; k < 20; ++k) {
    const EdgeNode n{static_cast<NodeKind>(kind(rng)), idx(rng), idx(rng)};
    const LinearizationState lin = linearization_state(n, snap, p);
    const Point2 P = node_position(n, g);
    auto diff = [&](double tau) {
      const PredictedPrimitive a = predict(n, in, lin, tau, p);
      const PredictedPrimitive b = taylor_predict(P, field, lin, tau, p);
      return std::max({std::abs(a.h - b.h), std::abs(a.u - b.u), std::abs(a.v - b.v)});
    };
    const double e1 = diff(tau0), e2 = diff(tau0 / 2);
    d1 += e1;
    d2 += e2;
    rmin = std::min(rmin, e1 / e2);
    rmax = std::max(rmax, e1 / e2);
  }
  const double secs = seconds_since(t0);
  const double ratio = d1 / d2;
  note("tau %.4e: sum of differences %.3e; tau/2: %.3e; per-node ratios %.2f..%.2f", tau0, d1, d2, rmin, rmax);
  char buf[160];
  std::snprintf(buf, sizeof buf, "predict vs Taylor oracle, 20 nodes: ratio %.3f in [3.5, 4.5], %.3f s < 1 s", ratio, secs);
  verdict(6, ratio >= 3.5 && ratio <= 4.5 && secs < 1.0, buf);
}

// ---------------------------------------------------------------------------
// 7: closed-form angular moments against fine quadrature

void angular_oracle() {
  const auto t0 = Clock::now();
  const Grid g{6, 6, 1.0};
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> coef(-1, 1), pos(1.5, 4.5), rad(0.02, 1.45);
  double worst = 0;
  for (int set = 0; set < 200; ++set) {
    CellArray<CellBilinear> data(g);
    for (int j = -2; j < 8; ++j)
      for (int i = -2; i < 8; ++i) data(i, j) = {coef(rng), coef(rng), coef(rng), coef(rng)};
    SonicCircle c{{pos(rng), pos(rng)}, rad(rng)};
    // every tenth circle is centred on a vertex or an edge
    if (set % 10 == 0) c.center = {std::round(c.center.x), std::round(c.center.y)};
    if (set % 10 == 5) c.center.x = std::round(c.center.x);
    const SonicCircleTrace t = trace_sonic_circle(c, g);
    const auto q = oracle::moments(c, g, data, 1000000);
    for (std::size_t k = 0; k < kAllKernels.size(); ++k) {
      const double exact = angular_moment(t, g, [&](CellIndex ci) { return data(ci); }, kAllKernels[k]);
      worst = std::max(worst, std::abs(exact - q[k]));
    }
  }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "200 datasets x 10 kernels vs 1e6-point quadrature: max error %.2e <= 1e-10, %.1f s < 30 s",
                worst, secs);
  verdict(7, worst <= 1e-10 && secs < 30.0, buf);
}

// ---------------------------------------------------------------------------
// 8: mass conservation

void mass_conservation() {
  const Scenario s = make_scenario("accuracy_2d");
  const InitialData init = initialize(s, 50, 50);
  ConservedField f = init.field;
  for (int k = 0; k < 200; ++k) f = step(f, init.bathymetry, scheme_for(s, 2));
  const double drift = std::abs(total_mass(f) - total_mass(init.field)) / total_mass(init.field);
  char buf[160];
  std::snprintf(buf, sizeof buf, "accuracy_2d N=50, 200 steps (t=%.4f): relative mass drift %.2e <= 1e-12", f.time, drift);
  verdict(8, drift <= 1e-12, buf);
}

// ---------------------------------------------------------------------------
// 10: Rossby adjustment

void rossby() {
  const auto t0 = Clock::now();
  const Scenario s = make_scenario("rossby_jet");
  const InitialData init = initialize(s, 400, 4);
  const SchemeConfig cfg = scheme_for(s, 2);
  const double f = s.params.f;
  ConservedField q = init.field;
  const double dv0 = max_dx(q, true), dh0 = max_dx(q, false);
  q = integrate(q, init.bathymetry, cfg, 1.0 / f);
  const double res1 = geostrophic_residual(q, init.bathymetry, s.params);
  q = integrate(q, init.bathymetry, cfg, std::numbers::pi / f);
  const double dvpi = max_dx(q, true), dhpi = max_dx(q, false);
  q = integrate(q, init.bathymetry, cfg, 10.0 / f);
  const double res10 = geostrophic_residual(q, init.bathymetry, s.params);
  note("geostrophic residual: t=1/f %.4f, t=10/f %.4f", res1, res10);
  note("max|dv/dx|: t=0 %.3f, t=pi/f %.3f (ratio %.2f)", dv0, dvpi, dvpi / dv0);
  note("max|dh/dx|: t=0 %.3f, t=pi/f %.3f", dh0, dhpi);
  note("runtime %.1f s", seconds_since(t0));
  char buf[200];
  std::snprintf(buf, sizeof buf, "rossby_jet 400x4: residual(10/f) %.3f < residual(1/f) %.3f and max|dv/dx| growth %.2f >= 3",
                res10, res1, dvpi / dv0);
  verdict(10, res10 < res1 && dvpi >= 3 * dv0, buf);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  lake_at_rest(1, "lake_1d");
  lake_at_rest(2, "lake_2d");
  jet();
  convergence_and_stability();
  small_perturbation();
  predictor_consistency();
  angular_oracle();
  mass_conservation();
  rossby();
  std::printf("%d criteria failed, total %.0f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
