#include "fveg/angular.hpp"

#include <algorithm>
#include <cmath>

namespace fveg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

}  // namespace

int cell_coordinate(double s, double origin, double hbar) {
  const double t = (s - origin) / hbar;
  double k = std::floor(t);
  if (t == k) k -= 1.0;
  return static_cast<int>(k);
}

SonicCircleTrace trace_sonic_circle(const SonicCircle& circle, const Grid& grid) {
  const double cx = circle.center.x;
  const double cy = circle.center.y;
  const double r = circle.radius;
  if (!(r >= 0.0)) throw ConfigurationError("sonic circle radius must be non-negative");

  const double x_min = grid.x_line(-grid.ghost);
  const double x_max = grid.x_line(grid.nx + grid.ghost);
  const double y_min = grid.y_line(-grid.ghost);
  const double y_max = grid.y_line(grid.ny + grid.ghost);
  if (cx - r < x_min || cx + r > x_max || cy - r < y_min || cy + r > y_max) {
    throw ConfigurationError("sonic circle leaves the ghost-padded domain");
  }

  std::vector<double> breaks{0.0, kTwoPi};
  if (r > 0.0) {
    const int i_lo = static_cast<int>(std::ceil((cx - r - grid.x0) / grid.hbar));
    const int i_hi = static_cast<int>(std::floor((cx + r - grid.x0) / grid.hbar));
    for (int I = i_lo; I <= i_hi; ++I) {
      const double d = std::clamp((grid.x_line(I) - cx) / r, -1.0, 1.0);
      const double t = std::acos(d);
      breaks.push_back(t);
      breaks.push_back(wrap_angle(kTwoPi - t));
    }
    const int j_lo = static_cast<int>(std::ceil((cy - r - grid.y0) / grid.hbar));
    const int j_hi = static_cast<int>(std::floor((cy + r - grid.y0) / grid.hbar));
    for (int J = j_lo; J <= j_hi; ++J) {
      const double d = std::clamp((grid.y_line(J) - cy) / r, -1.0, 1.0);
      const double t = std::asin(d);
      breaks.push_back(wrap_angle(t));
      breaks.push_back(wrap_angle(std::numbers::pi - t));
    }
  }
  std::sort(breaks.begin(), breaks.end());

  SonicCircleTrace trace{circle, {}};
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double t0 = breaks[k];
    const double t1 = breaks[k + 1];
    if (!(t1 > t0)) continue;
    const double mid = 0.5 * (t0 + t1);
    const CellIndex cell{cell_coordinate(cx + r * std::cos(mid), grid.x0, grid.hbar),
                         cell_coordinate(cy + r * std::sin(mid), grid.y0, grid.hbar)};
    if (!grid.in_padded(cell.i, cell.j)) {
      throw ConfigurationError("sonic circle sector outside the padded domain");
    }
    trace.sectors.push_back({t0, t1, cell});
  }
  return trace;
}

std::string_view to_string(Kernel kernel) {
  switch (kernel) {
    case Kernel::one: return "1";
    case Kernel::cos: return "cos";
    case Kernel::sin: return "sin";
    case Kernel::cos_sq: return "cos^2";
    case Kernel::sin_sq: return "sin^2";
    case Kernel::sin_cos: return "sin*cos";
    case Kernel::sgn_cos: return "sgn(cos)";
    case Kernel::sgn_sin: return "sgn(sin)";
    case Kernel::cos_2theta: return "cos(2theta)";
    case Kernel::sin_2theta: return "sin(2theta)";
  }
  return "?";
}

double TrigPoly::operator()(double theta) const {
  double sum = a[0];
  for (int n = 1; n <= kMaxDegree; ++n) {
    sum += a[n] * std::cos(n * theta) + b[n] * std::sin(n * theta);
  }
  return sum;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  for (int n = 0; n <= kMaxDegree; ++n) {
    a[n] += other.a[n];
    b[n] += other.b[n];
  }
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  for (int n = 0; n <= kMaxDegree; ++n) {
    a[n] *= s;
    b[n] *= s;
  }
  return *this;
}

TrigPoly operator+(TrigPoly p, const TrigPoly& q) { return p += q; }
TrigPoly operator*(TrigPoly p, double s) { return p *= s; }

TrigPoly operator*(const TrigPoly& p, const TrigPoly& q) {
  constexpr int N = TrigPoly::kMaxDegree;
  TrigPoly out;
  auto add_cos = [&](int n, double v) {
    if (v == 0.0) return;
    if (std::abs(n) > N) throw std::logic_error("trigonometric product exceeds degree 4");
    out.a[std::abs(n)] += v;
  };
  auto add_sin = [&](int n, double v) {
    if (v == 0.0 || n == 0) return;
    if (std::abs(n) > N) throw std::logic_error("trigonometric product exceeds degree 4");
    out.b[std::abs(n)] += n > 0 ? v : -v;
  };
  for (int m = 0; m <= N; ++m) {
    for (int n = 0; n <= N; ++n) {
      const double aa = p.a[m] * q.a[n];
      const double bb = p.b[m] * q.b[n];
      const double ab = p.a[m] * q.b[n];
      const double ba = p.b[m] * q.a[n];
      // cos m cos n = (cos(m-n) + cos(m+n)) / 2
      add_cos(m - n, 0.5 * aa);
      add_cos(m + n, 0.5 * aa);
      // sin m sin n = (cos(m-n) - cos(m+n)) / 2
      add_cos(m - n, 0.5 * bb);
      add_cos(m + n, -0.5 * bb);
      // cos m sin n = (sin(m+n) - sin(m-n)) / 2
      add_sin(m + n, 0.5 * ab);
      add_sin(m - n, -0.5 * ab);
      // sin m cos n = (sin(m+n) + sin(m-n)) / 2
      add_sin(m + n, 0.5 * ba);
      add_sin(m - n, 0.5 * ba);
    }
  }
  return out;
}

TrigPoly kernel_poly(Kernel kernel, double sgn_cos, double sgn_sin) {
  TrigPoly k;
  switch (kernel) {
    case Kernel::one: k.a[0] = 1.0; break;
    case Kernel::cos: k.a[1] = 1.0; break;
    case Kernel::sin: k.b[1] = 1.0; break;
    case Kernel::cos_sq: k.a[0] = 0.5; k.a[2] = 0.5; break;
    case Kernel::sin_sq: k.a[0] = 0.5; k.a[2] = -0.5; break;
    case Kernel::sin_cos: k.b[2] = 0.5; break;
    case Kernel::sgn_cos: k.a[0] = sgn_cos; break;
    case Kernel::sgn_sin: k.a[0] = sgn_sin; break;
    case Kernel::cos_2theta: k.a[2] = 1.0; break;
    case Kernel::sin_2theta: k.b[2] = 1.0; break;
  }
  return k;
}

FourierIntegrals fourier_integrals(double t0, double t1) {
  FourierIntegrals f;
  const double inv = 1.0 / kTwoPi;
  f.c[0] = (t1 - t0) * inv;
  // cos(n t), sin(n t) at both ends by the Chebyshev recurrence
  std::array<double, TrigPoly::kMaxDegree + 1> c0{}, s0{}, c1{}, s1{};
  c0[0] = c1[0] = 1.0;
  c0[1] = std::cos(t0);
  s0[1] = std::sin(t0);
  c1[1] = std::cos(t1);
  s1[1] = std::sin(t1);
  for (int n = 2; n <= TrigPoly::kMaxDegree; ++n) {
    c0[n] = 2.0 * c0[1] * c0[n - 1] - c0[n - 2];
    s0[n] = 2.0 * c0[1] * s0[n - 1] - s0[n - 2];
    c1[n] = 2.0 * c1[1] * c1[n - 1] - c1[n - 2];
    s1[n] = 2.0 * c1[1] * s1[n - 1] - s1[n - 2];
  }
  for (int n = 1; n <= TrigPoly::kMaxDegree; ++n) {
    f.c[n] = (s1[n] - s0[n]) * inv / n;
    f.s[n] = (c0[n] - c1[n]) * inv / n;
  }
  return f;
}

FourierIntegrals sampled_fourier_integrals(double t0, double t1, int n_nodes) {
  if (n_nodes < 1) throw ConfigurationError("angular sampling needs at least one node");
  const double step = kTwoPi / n_nodes;
  const long k_begin = static_cast<long>(std::ceil(t0 / step - 0.5));
  const long k_end = static_cast<long>(std::ceil(t1 / step - 0.5));
  FourierIntegrals f;
  const double w = 1.0 / n_nodes;
  for (long k = std::max(0L, k_begin); k < std::min<long>(k_end, n_nodes); ++k) {
    const double theta = (k + 0.5) * step;
    f.c[0] += w;
    for (int n = 1; n <= TrigPoly::kMaxDegree; ++n) {
      f.c[n] += w * std::cos(n * theta);
      f.s[n] += w * std::sin(n * theta);
    }
  }
  return f;
}

double integrate(const TrigPoly& p, const FourierIntegrals& f) {
  double sum = 0.0;
  for (int n = 0; n <= TrigPoly::kMaxDegree; ++n) {
    sum += p.a[n] * f.c[n] + p.b[n] * f.s[n];
  }
  return sum;
}

TrigPoly bilinear_on_circle(const CellBilinear& q, CellIndex cell, const SonicCircle& circle,
                            const Grid& grid) {
  const double xi0 = (circle.center.x - grid.x_center(cell.i)) / grid.hbar;
  const double eta0 = (circle.center.y - grid.y_center(cell.j)) / grid.hbar;
  const double rho = circle.radius / grid.hbar;
  TrigPoly p;
  p.a[0] = q.at(xi0, eta0);
  p.a[1] = (q.cx + q.cxy * eta0) * rho;
  p.b[1] = (q.cy + q.cxy * xi0) * rho;
  // xi * eta picks up rho^2 cos sin = rho^2 sin(2 theta) / 2
  p.b[2] = 0.5 * q.cxy * rho * rho;
  return p;
}

}  // namespace fveg
