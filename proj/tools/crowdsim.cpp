#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "crowdsim/crowdsim.h"

namespace fs = std::filesystem;

namespace {

struct ConfigDeleter {
  void operator()(crowdsim_config* c) const { crowdsim_config_free(c); }
};
using ConfigPtr = std::unique_ptr<crowdsim_config, ConfigDeleter>;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(crowdsim_status s, const std::string& what) {
  if (s != CROWDSIM_OK)
    throw CliError(what + ": " + crowdsim_status_name(s) + ": " + crowdsim_last_error());
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Common {
  std::string scenario;
  std::vector<std::string> sets;
  std::optional<double> snapshot_interval;
  std::string out;
};

ConfigPtr load(const Common& c) {
  crowdsim_config* raw = nullptr;
  check(crowdsim_config_load(c.scenario.c_str(), &raw), "loading '" + c.scenario + "'");
  ConfigPtr cfg(raw);
  for (const auto& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw CliError("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string text = kv.substr(eq + 1);
    double value = 0.0;
    if (text == "inf" || text == "never") {
      value = std::numeric_limits<double>::infinity();
    } else {
      char* end = nullptr;
      value = std::strtod(text.c_str(), &end);
      if (end == text.c_str() || *end != '\0') throw CliError("not a number in --set " + kv);
    }
    check(crowdsim_config_set(cfg.get(), key.c_str(), value), "setting " + key);
  }
  if (c.snapshot_interval)
    check(crowdsim_config_set_snapshot_interval(cfg.get(), *c.snapshot_interval),
          "setting snapshot interval");
  return cfg;
}

fs::path output_dir(const Common& c) {
  if (!c.out.empty()) return c.out;
  const char* root = std::getenv("CROWDSIM_OUT");
  fs::path base = root && *root ? fs::path(root) : fs::path("runs");
  return base / fs::path(c.scenario).stem();
}

void print_summary(const fs::path& dir, const crowdsim_run_summary& s) {
  std::printf("%s: %ld steps, t = %g, mass %g -> %g", dir.string().c_str(), s.steps, s.t_final,
              s.initial_mass, s.final_mass);
  if (s.evacuation_time >= 0) std::printf(", evacuated at t = %g", s.evacuation_time);
  if (s.reached_steady) std::printf(", steady");
  std::printf("\n");
}

int cmd_run(const Common& c) {
  ConfigPtr cfg = load(c);
  const fs::path dir = output_dir(c);
  crowdsim_run_summary s{};
  check(crowdsim_run(cfg.get(), dir.string().c_str(), &s), "run");
  print_summary(dir, s);
  return 0;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw CliError("bad value '" + item + "' in --values");
    out.push_back(v);
  }
  if (out.empty()) throw CliError("--values is empty");
  return out;
}

int cmd_sweep(const Common& c, std::string param, const std::string& values_text, int workers) {
  ConfigPtr base = load(c);
  std::vector<double> values;
  if (!values_text.empty()) {
    values = parse_list(values_text);
  } else {
    const char* p = nullptr;
    const double* v = nullptr;
    size_t n = 0;
    check(crowdsim_config_sweep(base.get(), &p, &v, &n), "reading sweep");
    if (n == 0) throw CliError("scenario has no sweep; pass --param and --values");
    if (param.empty()) param = p;
    values.assign(v, v + n);
  }
  if (param.empty()) throw CliError("--param is required with --values");

  // Validate every point up front so a bad value fails before any run starts.
  std::vector<ConfigPtr> cfgs;
  for (double v : values) {
    crowdsim_config* raw = nullptr;
    check(crowdsim_config_clone(base.get(), &raw), "cloning config");
    ConfigPtr cfg(raw);
    check(crowdsim_config_set(cfg.get(), param.c_str(), v), param + "=" + format_value(v));
    cfgs.push_back(std::move(cfg));
  }

  const fs::path root = output_dir(c);
  std::vector<crowdsim_run_summary> summaries(values.size());
  std::vector<std::string> errors(values.size());
  std::atomic<std::size_t> next{0};
  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(values.size())));
  auto work = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      const fs::path dir = root / (param + "=" + format_value(values[i]));
      if (crowdsim_run(cfgs[i].get(), dir.string().c_str(), &summaries[i]) != CROWDSIM_OK)
        errors[i] = crowdsim_last_error();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  int failed = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const fs::path dir = root / (param + "=" + format_value(values[i]));
    if (errors[i].empty()) {
      print_summary(dir, summaries[i]);
    } else {
      std::fprintf(stderr, "%s: %s\n", dir.string().c_str(), errors[i].c_str());
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}

int cmd_eikonal(const Common& c) {
  ConfigPtr cfg = load(c);
  const fs::path dir = output_dir(c);
  check(crowdsim_dump_eikonal(cfg.get(), dir.string().c_str()), "eikonal");
  std::printf("%s\n", (dir / "eikonal.csv").string().c_str());
  return 0;
}

int cmd_validate(const Common& c) {
  ConfigPtr cfg = load(c);
  crowdsim_validation v{};
  check(crowdsim_validate(cfg.get(), &v), "validate");
  if (v.failures == 0) {
    std::printf("ok: %ld steps, every invariant held\n", v.steps);
    return 0;
  }
  std::printf("%zu invariant violations in %ld steps; first: %s\n", v.failures, v.steps,
              v.first_failure);
  return 1;
}

void add_common(CLI::App* sub, Common& c, bool with_out) {
  sub->add_option("-s,--scenario", c.scenario, "built-in name or JSON scenario file")->required();
  sub->add_option("--set", c.sets, "override key=value (repeatable)");
  if (with_out) {
    sub->add_option("-o,--out", c.out, "output directory (default $CROWDSIM_OUT/<scenario>)");
    sub->add_option("--snapshot-interval", c.snapshot_interval, "seconds between snapshots");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pedestrian flow simulation with variable maximal density"};
  app.set_version_flag("--version", std::string(crowdsim_version()));
  app.require_subcommand(0, 1);

  Common common;
  std::string param;
  std::string values;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* run = app.add_subcommand("run", "run one scenario");
  add_common(run, common, true);
  auto* sweep = app.add_subcommand("sweep", "run a parameter study in parallel");
  add_common(sweep, common, true);
  sweep->add_option("--param", param, "parameter to vary (default: the scenario's sweep)");
  sweep->add_option("--values", values, "comma separated values");
  sweep->add_option("-j,--workers", workers, "concurrent runs")->check(CLI::PositiveNumber);
  auto* eik = app.add_subcommand("eikonal", "write the distance and direction fields");
  add_common(eik, common, true);
  auto* val = app.add_subcommand("validate", "run the invariant checks on a scenario");
  add_common(val, common, false);
  auto* list = app.add_subcommand("list", "list built-in scenarios");

  if (argc < 2) {
    std::cerr << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(common);
    if (*sweep) return cmd_sweep(common, param, values, workers);
    if (*eik) return cmd_eikonal(common);
    if (*val) return cmd_validate(common);
    if (*list) {
      for (size_t i = 0; i < crowdsim_builtin_count(); ++i) std::printf("%s\n", crowdsim_builtin_name(i));
      return 0;
    }
    std::cerr << app.help();
    return 2;
  } catch (const CliError& e) {
    std::fprintf(stderr, "crowdsim: %s\n", e.what());
    return 1;
  }
}
