// Command-line front end; talks to the library only through the C API.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ciscat/ciscat.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code(ciscat_status st) {
  switch (st) {
    case CISCAT_OK: return kExitOk;
    case CISCAT_ERR_ARGUMENT:
    case CISCAT_ERR_CONFIG:
    case CISCAT_ERR_IO: return kExitConfig;
    default: return kExitNumerical;
  }
}

// One JSON object per failure on stderr.
int report(ciscat_status st, const std::string& message) {
  const int code = exit_code(st);
  nlohmann::json rec = {{"error", ciscat_status_name(st)}, {"message", message}, {"exit_code", code}};
  std::cerr << rec.dump() << "\n";
  return code;
}

int report(ciscat_status st) { return report(st, ciscat_last_error()); }

struct RunOptions {
  std::string config;
  std::string preset;
  std::string out;
  std::string field;
  int channel = 0;
  int threads = 0;  // accepted for compatibility; the kernels are single-threaded
};

std::string output_dir(const RunOptions& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("CISCAT_OUT"); env && *env) return env;
  return "ciscat-out";
}

// Loads the config named by --config or --preset; null on failure (already reported).
ciscat_config* load(const RunOptions& o, bool required, int& code) {
  ciscat_config* cfg = nullptr;
  ciscat_status st = CISCAT_OK;
  if (!o.config.empty())
    st = ciscat_config_load(o.config.c_str(), &cfg);
  else if (!o.preset.empty())
    st = ciscat_config_preset(o.preset.c_str(), &cfg);
  else if (required) {
    code = report(CISCAT_ERR_CONFIG, "one of --config or --preset is required");
    return nullptr;
  }
  if (st != CISCAT_OK) code = report(st);
  return cfg;
}

void print_result(const ciscat_result* res) {
  for (size_t i = 0; i < ciscat_result_message_count(res); ++i)
    std::printf("%s\n", ciscat_result_message(res, i));
}

int run_subcommand(const std::string& name, const RunOptions& o) {
  int code = kExitOk;
  ciscat_config* cfg = load(o, true, code);
  if (!cfg) return code;
  const std::string expected = ciscat_config_subcommand(cfg);
  if (expected != name) {
    code = report(CISCAT_ERR_CONFIG, std::string("scenario '") + ciscat_config_scenario(cfg) +
                                         "' runs under the '" + expected + "' subcommand");
    ciscat_config_free(cfg);
    return code;
  }
  const std::string out = output_dir(o);
  ciscat_result* res = nullptr;
  const ciscat_status st = ciscat_run(cfg, out.c_str(), &res);
  ciscat_config_free(cfg);
  if (st != CISCAT_OK) return report(st);
  print_result(res);
  ciscat_result_free(res);
  std::fflush(stdout);
  std::fprintf(stderr, "wrote %s\n", out.c_str());
  return kExitOk;
}

int run_dislocations(const RunOptions& o) {
  int code = kExitOk;
  ciscat_config* cfg = load(o, false, code);
  if (code != kExitOk) return code;
  if (o.channel != 0) {
    if (!cfg) {
      const ciscat_status st = ciscat_config_default(&cfg);
      if (st != CISCAT_OK) return report(st);
    }
    const ciscat_status st =
        ciscat_config_set(cfg, "analysis", "channel", std::to_string(o.channel).c_str());
    if (st != CISCAT_OK) {
      ciscat_config_free(cfg);
      return report(st);
    }
  }
  const std::string out = output_dir(o);
  ciscat_result* res = nullptr;
  const ciscat_status st = ciscat_analyse_dump(o.field.c_str(), cfg, out.c_str(), &res);
  ciscat_config_free(cfg);
  if (st != CISCAT_OK) return report(st);
  for (size_t i = 0; i < ciscat_result_value_count(res); ++i)
    std::printf("%s = %.10g\n", ciscat_result_key(res, i), ciscat_result_value_at(res, i));
  print_result(res);
  ciscat_result_free(res);
  return kExitOk;
}

int run_list() {
  for (size_t i = 0; i < ciscat_preset_count(); ++i) {
    const char *name, *sub, *fig, *desc;
    ciscat_preset_info(i, &name, &sub, &fig, &desc);
    std::printf("%-20s %-13s %-10s %s\n", name, sub, fig, desc);
  }
  return kExitOk;
}

void add_run_flags(CLI::App* sub, RunOptions& o) {
  auto* c = sub->add_option("--config", o.config, "INI scenario file")->check(CLI::ExistingFile);
  sub->add_option("--preset", o.preset, "named preset (see list)")->excludes(c);
  sub->add_option("--out", o.out, "output directory (default $CISCAT_OUT)");
  sub->add_option("--threads", o.threads, "thread hint; results do not depend on it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ciscat: conical-intersection Aharonov-Bohm scattering toolkit"};
  app.require_subcommand(1);
  RunOptions opts;
  std::string chosen;

  for (const char* name : {"propagate", "crosssection", "wilson"}) {
    const char* help = std::string(name) == "propagate"      ? "wave-packet and surface scenarios"
                       : std::string(name) == "crosssection" ? "partial-wave cross sections and fields"
                                                             : "Wilson loops of the gauge potential";
    CLI::App* sub = app.add_subcommand(name, help);
    add_run_flags(sub, opts);
    sub->callback([&chosen, name] { chosen = name; });
  }
  CLI::App* dis = app.add_subcommand("dislocations", "phase dislocations of a field dump");
  add_run_flags(dis, opts);
  dis->add_option("--field", opts.field, "CISCAT-FIELD dump")->required()->check(CLI::ExistingFile);
  dis->add_option("--channel", opts.channel, "component to analyse (1 or 2)")->check(CLI::IsMember({1, 2}));
  dis->callback([&chosen] { chosen = "dislocations"; });
  app.add_subcommand("list", "print the preset table")->callback([&chosen] { chosen = "list"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitConfig;
  }

  if (chosen == "list") return run_list();
  if (chosen == "dislocations") return run_dislocations(opts);
  return run_subcommand(chosen, opts);
}
