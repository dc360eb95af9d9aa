#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "crowdsim/solver1d.hpp"
#include "crowdsim/solver2d.hpp"

namespace crowdsim {

/// Geometry of a 1D corridor run.
struct CorridorLayout {
  double length = 100.0;
  std::optional<double> gate_x = 66.0;
  double gate_open_time = 400.0;  // +inf: never opens
  double inflow_rho = 0.5;
  double inflow_until = 150.0;
  double initial_rho = 0.5;
  double initial_extent = 50.0;
  Boundary1D left = Boundary1D::Inflow;
  Boundary1D right = Boundary1D::Outflow;
};

/// Geometry of a 2D room. Points and rectangles are in meters and select the
/// cells whose centers they contain.
struct RoomLayout {
  struct Exit {
    double x = 0.0;
    double y = 0.0;
    double factor = 1.0;
  };
  struct Rect {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    double rho = 0.0;  // ignored for walls
  };
  struct Pin {
    double x = 0.0;
    double y = 0.0;
    double rho = 0.0;
  };
  double width = 100.0;
  double height = 100.0;
  std::vector<Exit> exits;
  std::vector<Rect> walls;
  std::vector<Rect> blocks;
  std::vector<Pin> pins;
};

struct SweepSpec {
  std::string param;
  std::vector<double> values;
};

struct RunConfig {
  std::string scenario;  // builtin name, or the custom file path
  int dims = 1;
  SimParams params;
  CorridorLayout corridor;
  RoomLayout room;
  double snapshot_interval = 50.0;
  RunControl control;
  std::optional<SweepSpec> sweep;
  bool dt_explicit = false;

  /// Sets a SimParams field or a scalar scenario key (gate_open_time,
  /// inflow_until, ...). Setting dx re-derives dt = dx/2 unless dt was set
  /// explicitly. Throws ConfigError for unknown keys.
  void set(std::string_view key, double value);
  [[nodiscard]] double get(std::string_view key) const;
  /// Re-checks every parameter and layout invariant.
  void validate() const;
};

/// Built-in names: test1, test2, test3, test4a, test4b.
const std::vector<std::string>& builtin_names();
RunConfig builtin_config(std::string_view name);

/// A builtin name, or a path to a JSON scenario file.
RunConfig load_config(std::string_view name_or_path);
RunConfig config_from_json(const nlohmann::json& j, std::string scenario_label = "custom");
nlohmann::json to_json(const RunConfig& cfg);

Scenario1D make_scenario_1d(const RunConfig& cfg);
Scenario2D make_scenario_2d(const RunConfig& cfg);
Grid make_room_grid(const RoomLayout& room, double dx);
std::unique_ptr<Stepper> make_stepper(const RunConfig& cfg);

}  // namespace crowdsim
