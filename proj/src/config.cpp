#include "crowdsim/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "crowdsim/error.hpp"

namespace crowdsim {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* boundary_name(Boundary1D b) {
  switch (b) {
    case Boundary1D::Inflow: return "inflow";
    case Boundary1D::Outflow: return "outflow";
    case Boundary1D::Closed: return "closed";
    case Boundary1D::Periodic: return "periodic";
    case Boundary1D::Transmissive: return "transmissive";
  }
  return "closed";
}

Boundary1D parse_boundary(const std::string& s) {
  for (auto b : {Boundary1D::Inflow, Boundary1D::Outflow, Boundary1D::Closed, Boundary1D::Periodic,
                 Boundary1D::Transmissive})
    if (s == boundary_name(b)) return b;
  throw ConfigError("unknown boundary kind '" + s + "'");
}

RoomLayout::Rect test3_block() { return {20.0, 60.0, 44.0, 68.0, 0.5}; }

RunConfig base_2d() {
  RunConfig c;
  c.dims = 2;
  c.snapshot_interval = 40.0;
  c.room.blocks = {test3_block()};
  c.control.evacuated_fraction = 0.01;
  return c;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

double num(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

double nullable(const json& v, double when_null) {
  if (v.is_null()) return when_null;
  if (!v.is_number()) throw ConfigError("expected a number or null");
  return v.get<double>();
}

json nullable_out(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

RoomLayout::Rect parse_rect(const json& j, bool with_rho) {
  if (with_rho)
    check_keys(j, {"x0", "x1", "y0", "y1", "rho"}, "rectangle");
  else
    check_keys(j, {"x0", "x1", "y0", "y1"}, "rectangle");
  RoomLayout::Rect r{num(j, "x0"), num(j, "x1"), num(j, "y0"), num(j, "y1"), 0.0};
  if (with_rho) r.rho = num(j, "rho");
  return r;
}

json rect_json(const RoomLayout::Rect& r, bool with_rho) {
  json j{{"x0", r.x0}, {"x1", r.x1}, {"y0", r.y0}, {"y1", r.y1}};
  if (with_rho) j["rho"] = r.rho;
  return j;
}

std::size_t cell_at(const Grid& g, double x, double y) {
  const int i = static_cast<int>(std::floor(x / g.dx()));
  const int j = static_cast<int>(std::floor(y / g.dx()));
  if (i < 0 || i >= g.nx() || j < 0 || j >= g.ny())
    throw ConfigError("point (" + std::to_string(x) + ", " + std::to_string(y) + ") lies outside the room");
  return g.index(i, j);
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"test1", "test2", "test3", "test4a", "test4b"};
  return names;
}

RunConfig builtin_config(std::string_view name) {
  RunConfig c;
  if (name == "test1") {
    c.params.eps = 0.0;
    c.params.t_end = 600.0;
  } else if (name == "test2") {
    c.params.dx = 0.5;
    c.params.dt = 0.25;
    c.params.t_end = 2000.0;
    c.corridor.gate_open_time = kInf;
    c.control.steady_tol = 1e-8;
    c.snapshot_interval = 100.0;
  } else if (name == "test3") {
    c = base_2d();
    c.params.t_end = 600.0;
    c.room.exits = {{99.5, 0.5, 1.0}, {99.5, 99.5, 1.0}};
    c.snapshot_interval = 20.0;
  } else if (name == "test4a") {
    c = base_2d();
    c.params.t_end = 3000.0;
    c.room.exits = {{99.5, 50.5, 0.5}};
    c.sweep = SweepSpec{"alpha_pos", {0.0, 1.0}};
  } else if (name == "test4b") {
    c = base_2d();
    c.params.dx = 2.0;
    c.params.dt = 1.0;
    c.params.t_end = 5000.0;
    c.room.exits = {{99.0, 51.0, 1.0}};
    c.room.pins = {{99.0, 51.0, c.params.tau_lo - 0.1}};
    c.sweep = SweepSpec{"alpha_pos", {0.0, 0.05, 0.2, 1.0}};
  } else {
    std::string list;
    for (const auto& n : builtin_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown builtin scenario '" + std::string(name) + "' (known: " + list + ")");
  }
  c.scenario = std::string(name);
  c.validate();
  return c;
}

void RunConfig::set(std::string_view key, double value) {
  if (params.has(key)) {
    params.set(key, value);
    if (key == "dt") dt_explicit = true;
    if (key == "dx" && !dt_explicit) params.dt = params.dx / 2.0;
    return;
  }
  if (key == "snapshot_interval") snapshot_interval = value;
  else if (key == "steady_tol") control.steady_tol = value;
  else if (key == "evacuated_fraction") control.evacuated_fraction = value;
  else if (key == "length") corridor.length = value;
  else if (key == "gate_x") corridor.gate_x = std::isnan(value) ? std::nullopt : std::optional(value);
  else if (key == "gate_open_time") corridor.gate_open_time = value;
  else if (key == "inflow_rho") corridor.inflow_rho = value;
  else if (key == "inflow_until") corridor.inflow_until = value;
  else if (key == "initial_rho") corridor.initial_rho = value;
  else if (key == "initial_extent") corridor.initial_extent = value;
  else if (key == "room_width") room.width = value;
  else if (key == "room_height") room.height = value;
  else if (key == "exit_factor") {
    for (auto& e : room.exits) e.factor = value;
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

double RunConfig::get(std::string_view key) const {
  if (params.has(key)) return params.get(key);
  if (key == "snapshot_interval") return snapshot_interval;
  if (key == "steady_tol") return control.steady_tol;
  if (key == "evacuated_fraction") return control.evacuated_fraction;
  if (key == "length") return corridor.length;
  if (key == "gate_x") return corridor.gate_x.value_or(std::numeric_limits<double>::quiet_NaN());
  if (key == "gate_open_time") return corridor.gate_open_time;
  if (key == "inflow_rho") return corridor.inflow_rho;
  if (key == "inflow_until") return corridor.inflow_until;
  if (key == "initial_rho") return corridor.initial_rho;
  if (key == "initial_extent") return corridor.initial_extent;
  if (key == "room_width") return room.width;
  if (key == "room_height") return room.height;
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void RunConfig::validate() const {
  if (dims != 1 && dims != 2) throw ConfigError("dims must be 1 or 2");
  if (!(snapshot_interval >= 0)) throw ConfigError("snapshot_interval must be >= 0");
  if (!(control.steady_tol >= 0) || !(control.evacuated_fraction >= 0) ||
      control.evacuated_fraction >= 1)
    throw ConfigError("run control thresholds out of range");
  if (sweep) {
    if (sweep->values.empty()) throw ConfigError("sweep needs at least one value");
    for (double v : sweep->values) {
      RunConfig probe = *this;
      probe.sweep.reset();
      probe.set(sweep->param, v);
      probe.validate();
    }
  }
  if (dims == 1)
    make_scenario_1d(*this).validate();
  else
    make_scenario_2d(*this).validate();
}

Grid make_room_grid(const RoomLayout& room, double dx) {
  const int nx = static_cast<int>(std::lround(room.width / dx));
  const int ny = static_cast<int>(std::lround(room.height / dx));
  if (nx < 2 || ny < 2 || std::abs(nx * dx - room.width) > 1e-9 * room.width ||
      std::abs(ny * dx - room.height) > 1e-9 * room.height)
    throw ConfigError("room extents must be multiples of dx with at least two cells per axis");
  Grid g = Grid::plane(nx, ny, dx);
  for (const auto& w : room.walls) g.set_wall_rect(w.x0, w.x1, w.y0, w.y1);
  for (const auto& e : room.exits) g.set_exit(cell_at(g, e.x, e.y), e.factor);
  for (const auto& p : room.pins) g.set_pinned(cell_at(g, p.x, p.y), p.rho);
  return g;
}

Scenario1D make_scenario_1d(const RunConfig& cfg) {
  if (cfg.dims != 1) throw ConfigError("configuration is not one-dimensional");
  Scenario1D s;
  s.params = cfg.params;
  const auto& c = cfg.corridor;
  s.length = c.length;
  s.gate_x = c.gate_x;
  s.gate_open_time = c.gate_open_time;
  s.left = c.left;
  s.right = c.right;
  s.inflow_rho = c.inflow_rho;
  s.inflow_until = c.inflow_until;
  s.initial_rho = c.initial_rho;
  s.initial_extent = c.initial_extent;
  return s;
}

Scenario2D make_scenario_2d(const RunConfig& cfg) {
  if (cfg.dims != 2) throw ConfigError("configuration is not two-dimensional");
  Scenario2D s;
  s.params = cfg.params;
  s.grid = make_room_grid(cfg.room, cfg.params.dx);
  s.rho0 = Field(s.grid.size(), 0.0, FieldRole::Rho);
  for (const auto& b : cfg.room.blocks) {
    for (std::size_t c = 0; c < s.grid.size(); ++c) {
      const double x = s.grid.xc(c);
      const double y = s.grid.yc(c);
      if (!s.grid.is_wall(c) && x >= b.x0 && x <= b.x1 && y >= b.y0 && y <= b.y1) s.rho0[c] = b.rho;
    }
  }
  return s;
}

std::unique_ptr<Stepper> make_stepper(const RunConfig& cfg) {
  if (cfg.dims == 1) return std::make_unique<Solver1D>(make_scenario_1d(cfg));
  return std::make_unique<Solver2D>(make_scenario_2d(cfg));
}

RunConfig config_from_json(const json& j, std::string scenario_label) {
  // scenario, version and result are written into meta.json and ignored on input.
  check_keys(j, {"base", "dims", "params", "corridor", "room", "snapshot_interval", "steady_tol",
                 "evacuated_fraction", "sweep", "scenario", "version", "result"},
             "scenario file");
  RunConfig c;
  if (j.contains("base")) {
    c = builtin_config(j.at("base").get<std::string>());
  } else {
    const int dims = j.value("dims", 1);
    if (dims == 2) c = base_2d();
    c.dims = dims;
  }
  if (j.contains("dims") && j.at("dims").get<int>() != c.dims)
    throw ConfigError("'dims' contradicts the base scenario");
  c.scenario = std::move(scenario_label);

  if (j.contains("params")) {
    const json& p = j.at("params");
    if (!p.is_object()) throw ConfigError("'params' must be an object");
    bool has_dt = p.contains("dt");
    for (const auto& [k, v] : p.items()) {
      if (!c.params.has(k)) throw ConfigError("unknown key '" + k + "' in params");
      if (!v.is_number()) throw ConfigError("parameter '" + k + "' must be a number");
    }
    // dt after dx so an explicit dt wins over the derived one.
    for (const auto& [k, v] : p.items())
      if (k != "dt") c.set(k, v.get<double>());
    if (has_dt) c.set("dt", p.at("dt").get<double>());
  }
  if (j.contains("corridor")) {
    const json& k = j.at("corridor");
    check_keys(k, {"length", "gate_x", "gate_open_time", "inflow_rho", "inflow_until",
                   "initial_rho", "initial_extent", "left", "right"},
               "corridor");
    auto& co = c.corridor;
    if (k.contains("length")) co.length = num(k, "length");
    if (k.contains("gate_x")) {
      const double g = nullable(k.at("gate_x"), std::numeric_limits<double>::quiet_NaN());
      co.gate_x = std::isnan(g) ? std::nullopt : std::optional(g);
    }
    if (k.contains("gate_open_time")) co.gate_open_time = nullable(k.at("gate_open_time"), kInf);
    if (k.contains("inflow_rho")) co.inflow_rho = num(k, "inflow_rho");
    if (k.contains("inflow_until")) co.inflow_until = num(k, "inflow_until");
    if (k.contains("initial_rho")) co.initial_rho = num(k, "initial_rho");
    if (k.contains("initial_extent")) co.initial_extent = num(k, "initial_extent");
    if (k.contains("left")) co.left = parse_boundary(k.at("left").get<std::string>());
    if (k.contains("right")) co.right = parse_boundary(k.at("right").get<std::string>());
  }
  if (j.contains("room")) {
    const json& r = j.at("room");
    check_keys(r, {"width", "height", "exits", "walls", "blocks", "pins"}, "room");
    auto& ro = c.room;
    if (r.contains("width")) ro.width = num(r, "width");
    if (r.contains("height")) ro.height = num(r, "height");
    if (r.contains("exits")) {
      ro.exits.clear();
      for (const auto& e : r.at("exits")) {
        check_keys(e, {"x", "y", "factor"}, "exit");
        ro.exits.push_back({num(e, "x"), num(e, "y"), e.contains("factor") ? num(e, "factor") : 1.0});
      }
    }
    if (r.contains("walls")) {
      ro.walls.clear();
      for (const auto& w : r.at("walls")) ro.walls.push_back(parse_rect(w, false));
    }
    if (r.contains("blocks")) {
      ro.blocks.clear();
      for (const auto& b : r.at("blocks")) ro.blocks.push_back(parse_rect(b, true));
    }
    if (r.contains("pins")) {
      ro.pins.clear();
      for (const auto& p : r.at("pins")) {
        check_keys(p, {"x", "y", "rho"}, "pin");
        ro.pins.push_back({num(p, "x"), num(p, "y"), num(p, "rho")});
      }
    }
  }
  if (j.contains("snapshot_interval")) c.snapshot_interval = num(j, "snapshot_interval");
  if (j.contains("steady_tol")) c.control.steady_tol = num(j, "steady_tol");
  if (j.contains("evacuated_fraction")) c.control.evacuated_fraction = num(j, "evacuated_fraction");
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    if (s.is_null()) {
      c.sweep.reset();
    } else {
      check_keys(s, {"param", "values"}, "sweep");
      c.sweep = SweepSpec{s.at("param").get<std::string>(), s.at("values").get<std::vector<double>>()};
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(std::string_view name_or_path) {
  for (const auto& n : builtin_names())
    if (name_or_path == n) return builtin_config(n);
  const std::filesystem::path path{std::string(name_or_path)};
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("'" + std::string(name_or_path) +
                      "' is neither a builtin scenario nor a readable file");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  try {
    return config_from_json(j, path.string());
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json to_json(const RunConfig& c) {
  json params = json::object();
  for (const auto& n : SimParams::names()) params[n] = c.params.get(n);
  json j{{"scenario", c.scenario},
         {"dims", c.dims},
         {"params", params},
         {"snapshot_interval", c.snapshot_interval},
         {"steady_tol", c.control.steady_tol},
         {"evacuated_fraction", c.control.evacuated_fraction}};
  if (c.dims == 1) {
    const auto& k = c.corridor;
    j["corridor"] = {{"length", k.length},
                     {"gate_x", k.gate_x ? json(*k.gate_x) : json(nullptr)},
                     {"gate_open_time", nullable_out(k.gate_open_time)},
                     {"inflow_rho", k.inflow_rho},
                     {"inflow_until", k.inflow_until},
                     {"initial_rho", k.initial_rho},
                     {"initial_extent", k.initial_extent},
                     {"left", boundary_name(k.left)},
                     {"right", boundary_name(k.right)}};
  } else {
    const auto& r = c.room;
    json exits = json::array(), walls = json::array(), blocks = json::array(), pins = json::array();
    for (const auto& e : r.exits) exits.push_back({{"x", e.x}, {"y", e.y}, {"factor", e.factor}});
    for (const auto& w : r.walls) walls.push_back(rect_json(w, false));
    for (const auto& b : r.blocks) blocks.push_back(rect_json(b, true));
    for (const auto& p : r.pins) pins.push_back({{"x", p.x}, {"y", p.y}, {"rho", p.rho}});
    j["room"] = {{"width", r.width}, {"height", r.height}, {"exits", exits},
                 {"walls", walls},   {"blocks", blocks},   {"pins", pins}};
  }
  j["sweep"] = c.sweep ? json{{"param", c.sweep->param}, {"values", c.sweep->values}} : json(nullptr);
  return j;
}

}  // namespace crowdsim
