#include "config.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <climits>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "error.hpp"

namespace ciscat {

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Propagate: return "propagate";
    case ScenarioKind::Surfaces: return "surfaces";
    case ScenarioKind::CrossSection: return "crosssection";
    case ScenarioKind::Field: return "field";
    case ScenarioKind::Wilson: return "wilson";
  }
  return "unknown";
}

const char* subcommand_of(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Propagate:
    case ScenarioKind::Surfaces: return "propagate";
    case ScenarioKind::CrossSection:
    case ScenarioKind::Field: return "crosssection";
    case ScenarioKind::Wilson: return "wilson";
  }
  return "unknown";
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "\n";
    if (issues[i].line > 0) out << "line " << issues[i].line << ": ";
    out << issues[i].message;
  }
  return out.str();
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  // Keep a decimal marker so the value reads back as a real.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<bool> parse_bool(std::string_view s) {
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Returns an error text, or nothing on success.
using Setter = std::function<std::optional<std::string>(ScenarioConfig&, std::string_view)>;
using Getter = std::function<std::string(const ScenarioConfig&)>;

struct Key {
  std::string section;
  std::string name;
  Getter get;
  Setter set;
};

template <class Pred>
Key real(const char* section, const char* name, double ScenarioConfig::*m, Pred ok,
         const char* rule) {
  return {section, name, [m](const ScenarioConfig& c) { return format_double(c.*m); },
          [m, ok, rule](ScenarioConfig& c, std::string_view v) -> std::optional<std::string> {
            const auto x = parse_double(v);
            if (!x) return "expected a real number, got '" + std::string(v) + "'";
            if (!ok(*x)) return std::string("must be ") + rule + " (got " + std::string(v) + ")";
            c.*m = *x;
            return std::nullopt;
          }};
}

template <class Pred>
Key integer(const char* section, const char* name, int ScenarioConfig::*m, Pred ok,
            const char* rule) {
  return {section, name, [m](const ScenarioConfig& c) { return std::to_string(c.*m); },
          [m, ok, rule](ScenarioConfig& c, std::string_view v) -> std::optional<std::string> {
            const auto x = parse_int(v);
            if (!x) return "expected an integer, got '" + std::string(v) + "'";
            if (!ok(*x)) return std::string("must be ") + rule + " (got " + std::string(v) + ")";
            c.*m = *x;
            return std::nullopt;
          }};
}

Key boolean(const char* section, const char* name, bool ScenarioConfig::*m) {
  return {section, name, [m](const ScenarioConfig& c) { return std::string(c.*m ? "true" : "false"); },
          [m](ScenarioConfig& c, std::string_view v) -> std::optional<std::string> {
            const auto x = parse_bool(v);
            if (!x) return "expected true or false, got '" + std::string(v) + "'";
            c.*m = *x;
            return std::nullopt;
          }};
}

Key choice(const char* section, const char* name, std::string ScenarioConfig::*m,
           std::vector<std::string> allowed) {
  return {section, name, [m](const ScenarioConfig& c) { return c.*m; },
          [m, allowed](ScenarioConfig& c, std::string_view v) -> std::optional<std::string> {
            if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
              std::string list;
              for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
              return "must be one of " + list + " (got '" + std::string(v) + "')";
            }
            c.*m = std::string(v);
            return std::nullopt;
          }};
}

const auto positive = [](double x) { return x > 0.0; };
const auto non_negative = [](double x) { return x >= 0.0; };
const auto any_real = [](double) { return true; };
const auto grid_size = [](int n) { return n >= 8 && std::has_single_bit(static_cast<unsigned>(n)); };

const std::vector<Key>& schema() {
  static const std::vector<Key> keys = [] {
    std::vector<Key> k;
    k.push_back({"run", "scenario", [](const ScenarioConfig& c) { return c.scenario; },
                 [](ScenarioConfig& c, std::string_view v) -> std::optional<std::string> {
                   c.scenario = std::string(v);
                   return std::nullopt;
                 }});
    k.push_back({"run", "kind", [](const ScenarioConfig& c) { return std::string(to_string(c.kind)); },
                 [](ScenarioConfig& c, std::string_view v) -> std::optional<std::string> {
                   for (ScenarioKind s : {ScenarioKind::Propagate, ScenarioKind::Surfaces,
                                          ScenarioKind::CrossSection, ScenarioKind::Field,
                                          ScenarioKind::Wilson})
                     if (v == to_string(s)) {
                       c.kind = s;
                       return std::nullopt;
                     }
                   return "must be one of propagate, surfaces, crosssection, field, wilson (got '" +
                          std::string(v) + "')";
                 }});
    k.push_back(real("run", "beta", &ScenarioConfig::beta, positive, "> 0"));
    k.push_back(real("run", "k", &ScenarioConfig::k, positive, "> 0"));
    k.push_back(real("run", "dtau", &ScenarioConfig::dtau, positive, "> 0"));
    k.push_back(integer("run", "n_steps", &ScenarioConfig::n_steps, [](int n) { return n >= 0; }, ">= 0"));
    k.push_back(integer("run", "snapshot_every", &ScenarioConfig::snapshot_every,
                        [](int n) { return n >= 0; }, ">= 0"));
    k.push_back(real("run", "marker_fraction", &ScenarioConfig::marker_fraction,
                     [](double x) { return x > 0.0 && x < 1.0; }, "in (0, 1)"));
    k.push_back(real("run", "max_tau", &ScenarioConfig::max_tau, non_negative, ">= 0"));
    k.push_back(choice("run", "dump_picture", &ScenarioConfig::dump_picture, {"diabatic", "adiabatic"}));
    k.push_back(choice("run", "dump_encoding", &ScenarioConfig::dump_encoding, {"binary", "ascii"}));

    k.push_back(integer("grid", "n_xi", &ScenarioConfig::n_xi, grid_size, "a power of two >= 8"));
    k.push_back(integer("grid", "n_eta", &ScenarioConfig::n_eta, grid_size, "a power of two >= 8"));
    k.push_back(real("grid", "xi_min", &ScenarioConfig::xi_min, any_real, "finite"));
    k.push_back(real("grid", "xi_max", &ScenarioConfig::xi_max, any_real, "finite"));
    k.push_back(real("grid", "eta_min", &ScenarioConfig::eta_min, any_real, "finite"));
    k.push_back(real("grid", "eta_max", &ScenarioConfig::eta_max, any_real, "finite"));

    k.push_back(choice("model", "kind", &ScenarioConfig::model,
                       {"free", "linear_jt", "capped_jt", "twisted_capped_jt", "two_ci"}));
    k.push_back(real("model", "delta", &ScenarioConfig::delta, non_negative, ">= 0"));
    k.push_back(real("model", "rho0", &ScenarioConfig::rho0, non_negative, ">= 0"));
    k.push_back(real("model", "x0", &ScenarioConfig::x0, [](double x) { return x != 0.0; }, "nonzero"));
    k.push_back(boolean("model", "barrier", &ScenarioConfig::barrier));
    k.push_back(real("model", "barrier_height", &ScenarioConfig::barrier_height, non_negative, ">= 0"));
    k.push_back(real("model", "barrier_radius", &ScenarioConfig::barrier_radius, positive, "> 0"));
    k.push_back(real("model", "alpha", &ScenarioConfig::alpha, any_real, "finite"));
    k.push_back(choice("model", "potential", &ScenarioConfig::potential, {"none", "hard_disk", "gaussian"}));
    k.push_back(real("model", "radius", &ScenarioConfig::radius, positive, "> 0"));
    k.push_back(real("model", "height", &ScenarioConfig::height, any_real, "finite"));
    k.push_back(real("model", "width", &ScenarioConfig::width, positive, "> 0"));

    k.push_back(real("packet", "xi0", &ScenarioConfig::xi0, any_real, "finite"));
    k.push_back(real("packet", "eta0", &ScenarioConfig::eta0, any_real, "finite"));
    k.push_back(integer("packet", "direction", &ScenarioConfig::direction,
                        [](int d) { return d == 1 || d == -1; }, "1 or -1"));
    k.push_back(real("packet", "sigma_long", &ScenarioConfig::sigma_long, positive, "> 0"));
    k.push_back(real("packet", "half_width", &ScenarioConfig::half_width, non_negative, ">= 0"));
    k.push_back(real("packet", "rolloff", &ScenarioConfig::rolloff, non_negative, ">= 0"));
    k.push_back(choice("packet", "absorber", &ScenarioConfig::absorber, {"none", "mask"}));
    k.push_back(real("packet", "absorber_margin", &ScenarioConfig::absorber_margin,
                     [](double x) { return x > 0.0 && x < 0.5; }, "in (0, 0.5)"));
    k.push_back(real("packet", "absorber_strength", &ScenarioConfig::absorber_strength, positive, "> 0"));

    k.push_back(boolean("analysis", "dislocations", &ScenarioConfig::dislocations));
    k.push_back(integer("analysis", "channel", &ScenarioConfig::channel,
                        [](int c) { return c == 1 || c == 2; }, "1 or 2"));
    k.push_back(real("analysis", "eps_amp", &ScenarioConfig::eps_amp,
                     [](double x) { return x > 0.0 && x < 1.0; }, "in (0, 1)"));
    k.push_back(real("analysis", "eps_ph", &ScenarioConfig::eps_ph,
                     [](double x) { return x > 0.0 && x < 3.14159; }, "in (0, pi)"));
    k.push_back(integer("analysis", "min_cells", &ScenarioConfig::min_cells,
                        [](int n) { return n >= 1; }, ">= 1"));
    k.push_back(integer("analysis", "stencil", &ScenarioConfig::stencil,
                        [](int n) { return n >= 1; }, ">= 1"));
    k.push_back(real("analysis", "local_amp", &ScenarioConfig::local_amp,
                     [](double x) { return x > 0.0 && x <= 1.0; }, "in (0, 1]"));
    k.push_back(real("analysis", "axis_tolerance", &ScenarioConfig::axis_tolerance, positive, "> 0"));
    k.push_back(real("analysis", "charge_radius", &ScenarioConfig::charge_radius, non_negative, ">= 0"));
    k.push_back(real("analysis", "charge_x", &ScenarioConfig::charge_x, any_real, "finite"));
    k.push_back(real("analysis", "charge_y", &ScenarioConfig::charge_y, any_real, "finite"));
    k.push_back(real("analysis", "charge_angle", &ScenarioConfig::charge_angle, any_real, "finite"));
    k.push_back(real("analysis", "charge_gap", &ScenarioConfig::charge_gap, non_negative, ">= 0"));
    k.push_back(integer("analysis", "n_theta", &ScenarioConfig::n_theta,
                        [](int n) { return n >= 2; }, ">= 2"));
    k.push_back(boolean("analysis", "compare_ab", &ScenarioConfig::compare_ab));
    k.push_back(real("analysis", "loop_x", &ScenarioConfig::loop_x, any_real, "finite"));
    k.push_back(real("analysis", "loop_y", &ScenarioConfig::loop_y, any_real, "finite"));
    k.push_back(real("analysis", "loop_radius", &ScenarioConfig::loop_radius, positive, "> 0"));
    k.push_back(integer("analysis", "surface_points", &ScenarioConfig::surface_points,
                        [](int n) { return n >= 2; }, ">= 2"));
    k.push_back(real("analysis", "surface_extent", &ScenarioConfig::surface_extent, positive, "> 0"));
    return k;
  }();
  return keys;
}

const Key* find_key(std::string_view section, std::string_view name) {
  for (const Key& k : schema())
    if (k.section == section && k.name == name) return &k;
  return nullptr;
}

bool known_section(std::string_view s) {
  return s == "run" || s == "grid" || s == "model" || s == "packet" || s == "analysis";
}

// Cross-key checks; issues carry no line.
void check_consistency(const ScenarioConfig& c, std::vector<ConfigIssue>& issues) {
  if (!(c.xi_min < c.xi_max)) issues.push_back({0, "[grid] xi_min must be below xi_max"});
  if (!(c.eta_min < c.eta_max)) issues.push_back({0, "[grid] eta_min must be below eta_max"});
  if (c.potential == "hard_disk" && c.kind == ScenarioKind::Field &&
      c.radius <= 0.0)
    issues.push_back({0, "[model] radius must be > 0 for a hard disk"});
  if (c.kind == ScenarioKind::Field && c.alpha != 0.5)
    issues.push_back({0, "[model] alpha must be 0.5 for a field scenario"});
}

struct Assignment {
  std::string section, key, value;
  int line;
};

using Tweak = std::function<void(ScenarioConfig&)>;

struct PresetEntry {
  PresetInfo info;
  Tweak tweak;
};

void scattering(ScenarioConfig& c, double k) {
  c.kind = ScenarioKind::CrossSection;
  c.alpha = 0.5;
  c.potential = "hard_disk";
  c.radius = 1.0;
  c.k = k;
  c.compare_ab = true;
}

void analytic_field(ScenarioConfig& c, double k) {
  scattering(c, k);
  c.kind = ScenarioKind::Field;
  c.n_xi = c.n_eta = 512;
  c.xi_min = c.eta_min = -20.0;
  c.xi_max = c.eta_max = 20.0;
  c.dislocations = true;
  c.channel = 1;
  c.direction = -1;  // incident from +x, so downstream is -x
}

void packet_run(ScenarioConfig& c, const char* model, double beta) {
  c.kind = ScenarioKind::Propagate;
  c.model = model;
  c.beta = beta;
  c.dump_picture = "adiabatic";
  c.dislocations = true;
  c.channel = 2;
  c.stencil = 12;
  c.eps_ph = 0.8;
  c.charge_radius = 4.0;
}

void wilson_two_ci(ScenarioConfig& c) {
  c.kind = ScenarioKind::Wilson;
  c.model = "two_ci";
  c.x0 = 3.0;
}

const std::vector<PresetEntry>& preset_table() {
  static const std::vector<PresetEntry> table = [] {
    std::vector<PresetEntry> t;
    auto add = [&](std::string name, std::string fig, std::string desc, ScenarioKind kind, Tweak tw) {
      t.push_back({{std::move(name), std::move(fig), std::move(desc), kind}, std::move(tw)});
    };
    const std::pair<const char*, double> ks[] = {
        {"fig1a", 0.01}, {"fig1b", 0.1}, {"fig1c", 1.0}, {"fig1d", 10.0}};
    for (const auto& [name, k] : ks) {
      std::ostringstream d;
      d << "hard disk a=1 plus half flux, k=" << k;
      add(name, "Fig. 1", d.str(), ScenarioKind::CrossSection,
          [k = k](ScenarioConfig& c) { scattering(c, k); });
    }
    add("fig1a_bluevsred", "Fig. 1(a)", "hard disk plus half flux against the pure flux tube, k=0.01",
        ScenarioKind::CrossSection, [](ScenarioConfig& c) { scattering(c, 0.01); });
    add("fig1a_green", "Fig. 1(a)", "hard disk a=1 without flux, k=0.01", ScenarioKind::CrossSection,
        [](ScenarioConfig& c) {
          scattering(c, 0.01);
          c.alpha = 0.0;
          c.compare_ab = false;
        });
    const std::pair<const char*, double> fs[] = {{"fig2_k001", 0.01}, {"fig2_k1", 1.0}, {"fig2_k10", 10.0}};
    for (const auto& [name, k] : fs) {
      std::ostringstream d;
      d << "analytic field dump, hard disk a=1 plus half flux, k=" << k;
      add(name, "Fig. 2", d.str(), ScenarioKind::Field, [k = k](ScenarioConfig& c) { analytic_field(c, k); });
    }
    add("fig4", "Fig. 4", "H'_ad packet at beta=1 with intermediate snapshots", ScenarioKind::Propagate,
        [](ScenarioConfig& c) {
          packet_run(c, "capped_jt", 1.0);
          c.snapshot_every = 1500;
          c.dislocations = false;
          c.charge_radius = 0.0;
        });
    add("fig5_surfaces", "Fig. 5", "BO surface cross sections of H'_ad with beta levels",
        ScenarioKind::Surfaces, [](ScenarioConfig& c) { c.kind = ScenarioKind::Surfaces; });
    const std::pair<const char*, double> rows[] = {{"row1", 1.0}, {"row2", 0.5}, {"row3", 0.125}};
    for (const auto& [row, beta] : rows) {
      std::ostringstream bl;
      bl << "beta=" << beta;
      add(std::string("fig6_") + row + "_left", "Fig. 6", "H'_ad final field, " + bl.str(),
          ScenarioKind::Propagate, [beta = beta](ScenarioConfig& c) { packet_run(c, "capped_jt", beta); });
      add(std::string("fig6_") + row + "_right", "Fig. 6", "H''_ad final field, " + bl.str(),
          ScenarioKind::Propagate,
          [beta = beta](ScenarioConfig& c) { packet_run(c, "twisted_capped_jt", beta); });
    }
    add("fig7", "Fig. 7", "two CIs (origin and x0=3 downwind) with a central barrier, beta=1",
        ScenarioKind::Propagate, [](ScenarioConfig& c) {
          packet_run(c, "two_ci", 1.0);
          c.x0 = 3.0;
          c.barrier = true;
          c.charge_x = 3.0;
          c.charge_angle = 3.141592653589793;
          c.charge_radius = 1.0;
        });
    add("wilson_fig7_inner", "Fig. 7", "Wilson loop about the CI at the origin", ScenarioKind::Wilson,
        [](ScenarioConfig& c) {
          wilson_two_ci(c);
          c.loop_x = 0.0;
          c.loop_radius = 1.0;
        });
    add("wilson_fig7_outer", "Fig. 7", "Wilson loop about both CIs", ScenarioKind::Wilson,
        [](ScenarioConfig& c) {
          wilson_two_ci(c);
          c.loop_x = 1.5;
          c.loop_radius = 3.0;
        });
    return t;
  }();
  return table;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(ErrorKind::Config, join_issues(issues)), issues_(std::move(issues)) {}

Grid2D ScenarioConfig::grid() const {
  return Grid2D(n_xi, n_eta, xi_min, xi_max, eta_min, eta_max);
}

TwoStatePotential ScenarioConfig::potential_model() const {
  ModelParams p;
  p.delta = delta;
  p.rho0 = rho0;
  p.x0 = x0;
  p.barrier.enabled = barrier;
  p.barrier.height = barrier_height;
  p.barrier.radius = barrier_radius;
  return TwoStatePotential(model_kind_from_string(model), p);
}

PropagationConfig ScenarioConfig::propagation() const {
  PropagationConfig p;
  p.grid = grid();
  p.model = potential_model();
  p.beta = beta;
  p.dtau = dtau;
  p.n_steps = n_steps;
  p.snapshot_every = snapshot_every;
  p.marker_fraction = marker_fraction;
  p.max_tau = max_tau;
  p.packet.xi0 = xi0;
  p.packet.eta0 = eta0;
  p.packet.direction = direction;
  p.packet.sigma_long = sigma_long;
  p.packet.half_width = half_width;
  p.packet.rolloff = rolloff;
  p.absorber.kind = absorber == "mask" ? AbsorberSpec::Kind::Mask : AbsorberSpec::Kind::None;
  p.absorber.margin = absorber_margin;
  p.absorber.strength = absorber_strength;
  return p;
}

RadialPotential ScenarioConfig::radial_potential() const {
  if (potential == "hard_disk") return RadialPotential::hard_disk(radius);
  if (potential == "gaussian") return RadialPotential::gaussian(height, width);
  return RadialPotential::none();
}

DislocationOptions ScenarioConfig::dislocation_options() const {
  DislocationOptions o;
  o.eps_amp = eps_amp;
  o.eps_ph = eps_ph;
  o.min_cells = min_cells;
  o.stencil = stencil;
  o.local_amp = local_amp;
  return o;
}

void set_config_value(ScenarioConfig& config, std::string_view section, std::string_view key,
                      std::string_view value) {
  const Key* k = find_key(section, key);
  const std::string where = "[" + std::string(section) + "]." + std::string(key);
  if (!k) throw ConfigError({{0, "unknown key " + where}});
  if (const auto err = k->set(config, trim(value))) throw ConfigError({{0, where + ": " + *err}});
}

ScenarioConfig parse_config(std::string_view text) {
  std::vector<ConfigIssue> issues;
  std::vector<Assignment> assignments;
  std::map<std::pair<std::string, std::string>, int> seen;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back({line_no, "malformed section header '" + std::string(line) + "'"});
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_section(section)) issues.push_back({line_no, "unknown section [" + section + "]"});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({line_no, "expected 'key = value', got '" + std::string(line) + "'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (section.empty()) {
      issues.push_back({line_no, "key '" + key + "' appears before any section"});
      continue;
    }
    if (!known_section(section)) continue;
    if (!find_key(section, key)) {
      issues.push_back({line_no, "unknown key [" + section + "]." + key});
      continue;
    }
    auto [it, fresh] = seen.emplace(std::make_pair(section, key), line_no);
    if (!fresh) {
      issues.push_back({line_no, "[" + section + "]." + key + " already set on line " +
                                     std::to_string(it->second)});
      continue;
    }
    assignments.push_back({section, key, value, line_no});
  }

  ScenarioConfig config;
  const auto scenario = std::find_if(assignments.begin(), assignments.end(), [](const Assignment& a) {
    return a.section == "run" && a.key == "scenario";
  });
  if (scenario == assignments.end()) {
    issues.push_back({0, "missing scenario: [run] scenario is required"});
  } else {
    try {
      config = preset_config(scenario->value);
    } catch (const ConfigError&) {
      issues.push_back({scenario->line, "[run].scenario: unknown preset '" + scenario->value +
                                            "' (see the list subcommand)"});
    }
  }
  for (const Assignment& a : assignments) {
    if (a.section == "run" && a.key == "scenario") continue;
    if (const auto err = find_key(a.section, a.key)->set(config, a.value))
      issues.push_back({a.line, "[" + a.section + "]." + a.key + ": " + *err});
  }
  check_consistency(config, issues);
  std::stable_sort(issues.begin(), issues.end(), [](const ConfigIssue& a, const ConfigIssue& b) {
    return (a.line == 0 ? INT_MAX : a.line) < (b.line == 0 ? INT_MAX : b.line);
  });
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({{0, "cannot open config file '" + path + "'"}});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string echo_config(const ScenarioConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const Key& k : schema()) {
    if (k.section != section) {
      if (!section.empty()) out << "\n";
      section = k.section;
      out << "[" << section << "]\n";
    }
    out << k.name << " = " << k.get(config) << "\n";
  }
  return out.str();
}

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> infos = [] {
    std::vector<PresetInfo> v;
    for (const auto& e : preset_table()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

ScenarioConfig preset_config(const std::string& name) {
  for (const auto& e : preset_table())
    if (e.info.name == name) {
      ScenarioConfig c;
      c.scenario = name;
      e.tweak(c);
      return c;
    }
  throw ConfigError({{0, "unknown preset '" + name + "'"}});
}

}  // namespace ciscat
