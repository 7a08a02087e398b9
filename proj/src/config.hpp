#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "partialwave.hpp"
#include "propagator.hpp"
#include "topo.hpp"

namespace ciscat {

/// What a scenario computes; each kind belongs to one CLI subcommand.
enum class ScenarioKind {
  Propagate,     // wave-packet run
  Surfaces,      // BO surface cross sections
  CrossSection,  // partial-wave k dsigma/dtheta table
  Field,         // analytic partial-wave field sampled on the grid
  Wilson,        // Wilson loop of the projected gauge potential
};

const char* to_string(ScenarioKind kind);
/// Subcommand that runs a kind ("propagate", "crosssection", "wilson").
const char* subcommand_of(ScenarioKind kind);

struct ScenarioConfig {
  // [run]
  std::string scenario;
  ScenarioKind kind = ScenarioKind::Propagate;
  double beta = 1.0;
  double k = 1.0;  // wavenumber for the partial-wave kinds
  double dtau = 0.005;
  int n_steps = 0;
  int snapshot_every = 0;
  double marker_fraction = 0.75;
  double max_tau = 0.0;
  std::string dump_picture = "diabatic";  // diabatic | adiabatic
  std::string dump_encoding = "binary";   // binary | ascii

  // [grid]
  int n_xi = 512, n_eta = 512;
  double xi_min = -40.0, xi_max = 40.0, eta_min = -40.0, eta_max = 40.0;

  // [model]
  std::string model = "capped_jt";
  double delta = 1.0;
  double rho0 = 5.0;
  double x0 = 3.0;
  bool barrier = false;
  double barrier_height = 50.0;
  double barrier_radius = 1.0;
  double alpha = 0.5;
  std::string potential = "hard_disk";  // none | hard_disk | gaussian
  double radius = 1.0;
  double height = 1.0;
  double width = 0.5;

  // [packet]
  double xi0 = -20.5;
  double eta0 = 0.0;
  int direction = 1;
  double sigma_long = 3.8;
  double half_width = 12.0;
  double rolloff = 4.0;
  std::string absorber = "mask";  // none | mask
  double absorber_margin = 0.1;
  double absorber_strength = 8.0;

  // [analysis]
  bool dislocations = false;
  int channel = 2;
  double eps_amp = 0.02;
  double eps_ph = 0.3;
  int min_cells = 5;
  int stencil = 1;
  double local_amp = 0.35;
  double axis_tolerance = 1.5;
  double charge_radius = 0.0;  // 0: no charge
  double charge_x = 0.0;
  double charge_y = 0.0;
  double charge_angle = 0.0;   // the loop opens on this ray
  double charge_gap = 4.0;     // cells skipped either side of the opening ray
  int n_theta = 360;
  bool compare_ab = false;
  double loop_x = 0.0;
  double loop_y = 0.0;
  double loop_radius = 1.0;
  int surface_points = 401;
  double surface_extent = 10.0;

  Grid2D grid() const;
  TwoStatePotential potential_model() const;
  PropagationConfig propagation() const;
  RadialPotential radial_potential() const;
  DislocationOptions dislocation_options() const;

  bool operator==(const ScenarioConfig&) const = default;
};

struct ConfigIssue {
  int line = 0;  // 0 when the issue has no source line
  std::string message;
};

/// Thrown with every problem found, not only the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// INI text -> config. The named preset supplies the defaults; explicit keys
/// override them.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Every key with its value, in a fixed order. Reparsing gives the same config.
std::string echo_config(const ScenarioConfig& config);

/// Sets one key from text; throws ConfigError on an unknown key or bad value.
void set_config_value(ScenarioConfig& config, std::string_view section, std::string_view key,
                      std::string_view value);

struct PresetInfo {
  std::string name;
  std::string figure;
  std::string description;
  ScenarioKind kind;
};

const std::vector<PresetInfo>& presets();
/// Throws ConfigError for an unknown name.
ScenarioConfig preset_config(const std::string& name);

}  // namespace ciscat
