#include "fveg/cli_io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace fveg {

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  std::ostringstream msg;
  msg << "invalid value '" << value << "' for key '" << key << "': " << why;
  throw ConfigurationError(msg.str());
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "not a number");
  return out;
}

int to_int(std::string_view key, std::string_view value) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "not an integer");
  return out;
}

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double total_mass(const ConservedField& field) {
  double sum = 0.0;
  for (int j = 0; j < field.grid.ny; ++j) {
    for (int i = 0; i < field.grid.nx; ++i) sum += field.cells(i, j).h;
  }
  return sum;
}

std::filesystem::path snapshot_path(const std::filesystem::path& dir, int index) {
  char name[32];
  std::snprintf(name, sizeof name, "snapshot_%04d.csv", index);
  return dir / name;
}

}  // namespace

void RunConfig::validate() const {
  if (scenario.empty()) throw ConfigurationError("missing required key 'scenario'");
  if (nx < 1) bad_value("nx", std::to_string(nx), "must be at least 1");
  if (ny < 1) bad_value("ny", std::to_string(ny), "must be at least 1");
  if (!(cfl > 0.0 && cfl <= 1.0)) bad_value("cfl", number(cfl), "out of range (0, 1]");
  if (order != 1 && order != 2) bad_value("order", std::to_string(order), "must be 1 or 2");
  if (t_end && !(*t_end > 0.0)) bad_value("t_end", number(*t_end), "must be positive");
  if (!(snapshot_interval >= 0.0)) bad_value("snapshot_interval", number(snapshot_interval), "must be non-negative");
  for (std::size_t k = 0; k < convergence.size(); ++k) {
    if (convergence[k] < 1) bad_value("convergence", std::to_string(convergence[k]), "resolutions must be positive");
    if (k > 0 && convergence[k] != 2 * convergence[k - 1]) {
      bad_value("convergence", std::to_string(convergence[k]), "resolutions must double");
    }
  }
  if (convergence.size() == 1) bad_value("convergence", std::to_string(convergence[0]), "needs at least two resolutions");
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "scenario") {
    c.scenario = std::string(value);
  } else if (key == "nx") {
    c.nx = to_int(key, value);
  } else if (key == "ny") {
    c.ny = to_int(key, value);
  } else if (key == "cfl") {
    c.cfl = to_double(key, value);
  } else if (key == "order") {
    c.order = to_int(key, value);
  } else if (key == "limiter") {
    try {
      c.limiter = parse_limiter(value);
    } catch (const ConfigurationError&) {
      bad_value(key, value, "expected minmod, mc or none");
    }
  } else if (key == "t_end" || key == "t-end") {
    c.t_end = to_double(key, value);
  } else if (key == "out") {
    c.out = std::string(value);
  } else if (key == "snapshot_interval") {
    c.snapshot_interval = to_double(key, value);
  } else if (key == "eps") {
    c.overrides.eps = to_double(key, value);
  } else if (key == "f") {
    c.overrides.f = to_double(key, value);
  } else if (key == "g") {
    c.overrides.g = to_double(key, value);
  } else if (key == "x_min") {
    c.overrides.x_min = to_double(key, value);
  } else if (key == "x_max") {
    c.overrides.x_max = to_double(key, value);
  } else if (key == "y_min") {
    c.overrides.y_min = to_double(key, value);
  } else if (key == "init") {
    if (value == "midpoint") {
      c.sampling = InitSampling::midpoint;
    } else if (value == "gauss3") {
      c.sampling = InitSampling::gauss3;
    } else {
      bad_value(key, value, "expected midpoint or gauss3");
    }
  } else if (key == "convergence") {
    c.convergence.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      c.convergence.push_back(to_int(key, trim(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  } else {
    std::ostringstream msg;
    msg << "unknown key '" << key << "'";
    throw ConfigurationError(msg.str());
  }
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    std::string_view rest = line;
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    // Tokens are key=value pairs; blanks around '=' are allowed.
    static const std::regex around_eq(R"(\s*=\s*)");
    const std::string joined = std::regex_replace(std::string(rest), around_eq, "=");
    std::istringstream tokens(joined);
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0) {
        std::ostringstream msg;
        msg << "malformed setting '" << token << "', expected key = value";
        throw ConfigurationError(msg.str());
      }
      apply_setting(base, std::string_view(token).substr(0, eq), std::string_view(token).substr(eq + 1));
    }
  }
  return base;
}

RunConfig parse_config(std::string_view text, const std::vector<std::pair<std::string, std::string>>& flags) {
  RunConfig c = parse_config_text(text);
  for (const auto& [key, value] : flags) apply_setting(c, key, value);
  c.validate();
  return c;
}

std::vector<SnapshotRow> snapshot_rows(const ConservedField& field, const Bathymetry& bathymetry) {
  const Grid& grid = field.grid;
  std::vector<SnapshotRow> rows;
  rows.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const PrimitiveState w = to_primitive(field.cells(i, j));
      const double b = bathymetry.b(i, j);
      rows.push_back({grid.x_center(i), grid.y_center(j), w.h, w.u, w.v, b, w.h + b});
    }
  }
  return rows;
}

void write_snapshot_rows(const std::vector<SnapshotRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << kSnapshotHeader << '\n';
  for (const SnapshotRow& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) out << ',';
      out << number(r[k]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_snapshot(const ConservedField& field, const Bathymetry& bathymetry,
                    const std::filesystem::path& path) {
  write_snapshot_rows(snapshot_rows(field, bathymetry), path);
}

std::vector<SnapshotRow> read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kSnapshotHeader) {
    throw std::runtime_error(path.string() + ": unexpected snapshot header");
  }
  std::vector<SnapshotRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SnapshotRow r{};
    std::string_view rest = line;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (k + 1 == r.size())) {
        throw std::runtime_error(path.string() + ": wrong number of columns");
      }
      r[k] = to_double("snapshot", rest.substr(0, comma));
      if (comma != std::string_view::npos) rest = rest.substr(comma + 1);
    }
    rows.push_back(r);
  }
  return rows;
}

std::string format_eoc_table(const ErrorReport& report) {
  std::ostringstream out;
  out << "N,err_h,eoc_h,err_hu,eoc_hu,err_hv,eoc_hv\n";
  for (std::size_t k = 0; k < report.errors.size(); ++k) {
    const VariableErrors& e = report.errors[k];
    const std::optional<VariableErrors> o = k < report.eoc.size() ? report.eoc[k] : std::nullopt;
    auto cell = [&](double v) { return o ? number(v) : std::string(); };
    out << report.resolutions[k] << ',' << number(e.h) << ',' << (o ? cell(o->h) : "") << ','
        << number(e.hu) << ',' << (o ? cell(o->hu) : "") << ',' << number(e.hv) << ','
        << (o ? cell(o->hv) : "") << '\n';
  }
  return out.str();
}

void write_eoc_table(const ErrorReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << format_eoc_table(report);
}

SchemeConfig scheme_config(const RunConfig& config, const Scenario& scenario) {
  SchemeConfig s;
  s.params = scenario.params;
  s.order = config.order;
  s.limiter = config.limiter;
  s.cfl = config.cfl;
  s.bc = scenario.bc;
  return s;
}

ConservedField integrate(const ConservedField& initial, const Bathymetry& bathymetry,
                         const SchemeConfig& scheme, double t_end, int* steps) {
  ConservedField field = initial;
  int n = 0;
  while (field.time < t_end) {
    field = step(field, bathymetry, scheme, nullptr, t_end);
    ++n;
  }
  if (steps) *steps = n;
  return field;
}

RunSummary run(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const Scenario scenario = make_scenario(config.scenario, config.overrides);
  const double t_end = config.t_end.value_or(scenario.t_end);
  const SchemeConfig scheme = scheme_config(config, scenario);
  std::filesystem::create_directories(config.out);

  RunSummary summary;
  if (!config.convergence.empty()) {
    std::vector<ConservedField> finals;
    for (int n : config.convergence) {
      const int ny = std::max(1, static_cast<int>(std::lround(static_cast<double>(n) * config.ny / config.nx)));
      InitialData data = initialize(scenario, n, ny, config.sampling);
      int steps = 0;
      finals.push_back(integrate(data.field, data.bathymetry, scheme, t_end, &steps));
      summary.steps += steps;
      summary.bathymetry = std::move(data.bathymetry);
    }
    for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
      summary.report.resolutions.push_back(config.convergence[k]);
      summary.report.errors.push_back(l1_error(finals[k], finals[k + 1]));
    }
    fill_eoc(summary.report);
    summary.final_field = finals.back();
    write_eoc_table(summary.report, config.out / "eoc.csv");
  } else {
    const InitialData data = initialize(scenario, config.nx, config.ny, config.sampling);
    const double mass0 = total_mass(data.field);
    ConservedField field = data.field;
    int index = 0;
    auto snapshot = [&](const ConservedField& f) {
      summary.snapshots.push_back(snapshot_path(config.out, index++));
      write_snapshot(f, data.bathymetry, summary.snapshots.back());
    };
    snapshot(field);
    double next_snapshot = config.snapshot_interval > 0.0 ? config.snapshot_interval : t_end;
    while (field.time < t_end) {
      field = step(field, data.bathymetry, scheme, nullptr, std::min(next_snapshot, t_end));
      ++summary.steps;
      if (field.time >= next_snapshot && field.time < t_end) {
        snapshot(field);
        next_snapshot += config.snapshot_interval;
      }
    }
    snapshot(field);
    summary.report.resolutions.push_back(config.nx);
    summary.report.errors.push_back(l1_error(field, data.field));
    summary.report.eoc.push_back(std::nullopt);
    summary.mass_drift = std::abs(total_mass(field) - mass0) / std::abs(mass0);
    summary.lake_residual = lake_at_rest_residual(field, data.bathymetry);
    if (scenario.params.f > 0.0) summary.geostrophic = geostrophic_residual(field, data.bathymetry, scenario.params);
    summary.final_field = std::move(field);
    summary.bathymetry = data.bathymetry;
  }
  summary.report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace fveg
