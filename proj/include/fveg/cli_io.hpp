#pragma once

// Run configuration, CSV snapshots and EOC tables, and the run driver.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fveg/diagnostics.hpp"
#include "fveg/fv_scheme.hpp"
#include "fveg/scenarios.hpp"

namespace fveg {

struct RunConfig {
  std::string scenario;
  int nx = 20;
  int ny = 20;
  double cfl = 0.5;
  int order = 2;
  Limiter limiter = Limiter::minmod;
  std::optional<double> t_end;  ///< scenario default when empty
  std::filesystem::path out = "out";
  /// Time between snapshots; 0 writes only the initial and final states.
  double snapshot_interval = 0.0;
  ScenarioOverrides overrides;
  InitSampling sampling = InitSampling::midpoint;
  /// Non-empty selects convergence mode: nx runs over the ladder and ny
  /// scales with it.
  std::vector<int> convergence;

  /// Throws ConfigurationError naming the offending key.
  void validate() const;
};

/// Sets one key from its textual value. Keys: scenario, nx, ny, cfl, order,
/// limiter, t_end, out, snapshot_interval, eps, f, g, x_min, x_max, y_min,
/// init, convergence. Throws ConfigurationError naming the key.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// `key = value` pairs separated by newlines or blanks, `#` starts a
/// comment. Settings are applied on top of `base`; the result is not
/// validated.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});

/// parse_config_text followed by the flag settings (flags win) and
/// validation.
RunConfig parse_config(std::string_view text,
                       const std::vector<std::pair<std::string, std::string>>& flags = {});

inline constexpr std::string_view kSnapshotHeader = "x,y,h,u,v,b,h_plus_b";

/// One row per interior cell, row-major (x fastest), 17 significant digits.
using SnapshotRow = std::array<double, 7>;

std::vector<SnapshotRow> snapshot_rows(const ConservedField& field, const Bathymetry& bathymetry);
void write_snapshot_rows(const std::vector<SnapshotRow>& rows, const std::filesystem::path& path);
void write_snapshot(const ConservedField& field, const Bathymetry& bathymetry,
                    const std::filesystem::path& path);
std::vector<SnapshotRow> read_snapshot(const std::filesystem::path& path);

/// Layout N,err_h,eoc_h,err_hu,eoc_hu,err_hv,eoc_hv; missing EOC cells are
/// left empty.
std::string format_eoc_table(const ErrorReport& report);
void write_eoc_table(const ErrorReport& report, const std::filesystem::path& path);

struct RunSummary {
  ErrorReport report;
  ConservedField final_field;
  Bathymetry bathymetry;
  int steps = 0;
  std::vector<std::filesystem::path> snapshots;
  double mass_drift = 0.0;  ///< relative change of sum h
  LakeAtRestResidual lake_residual;
  std::optional<double> geostrophic;
};

/// Advances the initial data to t_end and returns the final field.
ConservedField integrate(const ConservedField& initial, const Bathymetry& bathymetry,
                         const SchemeConfig& scheme, double t_end, int* steps = nullptr);

/// Single run: writes snapshots into config.out and reports the L1 change of
/// (h, hu, hv) against the initial data. Convergence mode: runs the ladder,
/// reports successive self-differences e_N = |U_N - restrict(U_2N)| with
/// EOC and writes eoc.csv.
RunSummary run(const RunConfig& config);

SchemeConfig scheme_config(const RunConfig& config, const Scenario& scenario);

}  // namespace fveg
