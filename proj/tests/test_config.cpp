#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"
#include "field.hpp"
#include "scenario.hpp"
#include "support.hpp"

using namespace ciscat;
namespace fs = std::filesystem;

namespace {

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("ciscat_test_" + tag + "_" + std::to_string(testing::rng()()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<ConfigIssue> issues_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<ConfigIssue>& issues, const std::string& needle) {
  for (const ConfigIssue& i : issues)
    if (i.message.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("minimal preset config is fully defaulted") {
  const ScenarioConfig c = parse_config("[run]\nscenario = fig6_row1_left\n");
  CHECK(c.scenario == "fig6_row1_left");
  CHECK(c.kind == ScenarioKind::Propagate);
  CHECK(c.model == "capped_jt");
  CHECK(c.beta == 1.0);
  CHECK(c.n_xi == 512);
  CHECK(c.n_eta == 512);
  CHECK(c == preset_config("fig6_row1_left"));
  // Every key shows up in the echo.
  const std::string echo = echo_config(c);
  for (const char* key : {"beta = 1", "n_xi = 512", "kind = capped_jt", "dtau = 0.005", "stencil = 12"})
    CHECK(echo.find(key) != std::string::npos);
}

TEST_CASE("explicit keys override the preset") {
  const ScenarioConfig c = parse_config(
      "# comment line\n[run]\nscenario = fig6_row2_right  # trailing comment\nn_steps = 10\n"
      "[grid]\nn_xi = 64\n");
  CHECK(c.model == "twisted_capped_jt");
  CHECK(c.beta == 0.5);
  CHECK(c.n_steps == 10);
  CHECK(c.n_xi == 64);
}

TEST_CASE("constraint violation names the key") {
  const auto issues = issues_of("[run]\nscenario = fig6_row1_left\nbeta = -1\n");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].line == 3);
  CHECK(issues[0].message.find("[run].beta") != std::string::npos);
  CHECK_FAILS_WITH(parse_config("[run]\nscenario = fig6_row1_left\nbeta = -1\n"), ErrorKind::Config);
}

TEST_CASE("empty file is missing a scenario") {
  CHECK(mentions(issues_of(""), "missing scenario"));
  CHECK(mentions(issues_of("# nothing here\n\n"), "missing scenario"));
}

TEST_CASE("every problem is reported with its line") {
  const auto issues = issues_of(
      "[run]\n"                 // 1
      "scenario = fig4\n"       // 2
      "beta = abc\n"            // 3
      "bogus = 1\n"             // 4
      "[grid]\n"                // 5
      "n_xi = 100\n"            // 6
      "[weird]\n"               // 7
      "x = 1\n"                 // 8
      "[packet]\n"              // 9
      "direction = 1\n"         // 10
      "direction = -1\n"        // 11
      "this line has no equals\n");  // 12
  REQUIRE(issues.size() == 6);
  CHECK(issues[0].line == 3);
  CHECK(issues[0].message.find("[run].beta") != std::string::npos);
  CHECK(issues[1].line == 4);
  CHECK(issues[1].message.find("unknown key [run].bogus") != std::string::npos);
  CHECK(issues[2].line == 6);
  CHECK(issues[2].message.find("power of two") != std::string::npos);
  CHECK(issues[3].line == 7);
  CHECK(issues[4].line == 11);
  CHECK(issues[4].message.find("already set on line 10") != std::string::npos);
  CHECK(issues[5].line == 12);
}

TEST_CASE("unknown preset and cross-key checks") {
  const auto a = issues_of("[run]\nscenario = fig99\n");
  REQUIRE(a.size() == 1);
  CHECK(a[0].line == 2);
  CHECK(a[0].message.find("fig99") != std::string::npos);
  const auto b = issues_of("[run]\nscenario = fig4\n[grid]\nxi_min = 5\nxi_max = -5\n");
  CHECK(mentions(b, "xi_min must be below xi_max"));
  CHECK_FAILS_WITH(preset_config("nope"), ErrorKind::Config);
}

TEST_CASE("echo round trip is exact for every preset") {
  for (const PresetInfo& p : presets()) {
    CAPTURE(p.name);
    const ScenarioConfig c = preset_config(p.name);
    const std::string echo = echo_config(c);
    const ScenarioConfig back = parse_config(echo);
    CHECK(back == c);
    CHECK(echo_config(back) == echo);
  }
  // Values that do not print exactly in few digits survive too.
  ScenarioConfig c = preset_config("fig4");
  c.beta = 0.1 + 0.2;
  c.xi0 = -1.0 / 3.0;
  c.eps_amp = 1e-17;
  const ScenarioConfig back = parse_config(echo_config(c));
  CHECK(back.beta == c.beta);
  CHECK(back.xi0 == c.xi0);
  CHECK(back.eps_amp == c.eps_amp);
}

TEST_CASE("set_config_value") {
  ScenarioConfig c = preset_config("fig4");
  set_config_value(c, "analysis", "channel", "1");
  CHECK(c.channel == 1);
  set_config_value(c, "model", "barrier", "true");
  CHECK(c.barrier);
  CHECK_FAILS_WITH(set_config_value(c, "analysis", "channel", "3"), ErrorKind::Config);
  CHECK_FAILS_WITH(set_config_value(c, "analysis", "nope", "3"), ErrorKind::Config);
  CHECK_FAILS_WITH(set_config_value(c, "run", "n_steps", "1.5"), ErrorKind::Config);
}

TEST_CASE("preset catalogue") {
  const auto lines = list_scenarios();
  auto has = [&](const std::string& name) {
    for (const std::string& l : lines)
      if (l.rfind(name + "\t", 0) == 0) return true;
    return false;
  };
  for (const char* name : {"fig6_row3_right", "fig2_k10", "fig1a", "fig1b", "fig1c", "fig1d", "fig4",
                           "fig5_surfaces", "fig7", "wilson_fig7_inner", "wilson_fig7_outer"})
    CHECK(has(name));
  const ScenarioConfig r3 = preset_config("fig6_row3_right");
  CHECK(r3.model == "twisted_capped_jt");
  CHECK(r3.beta == 0.125);
  const ScenarioConfig f2 = preset_config("fig2_k10");
  CHECK(f2.kind == ScenarioKind::Field);
  CHECK(f2.k == 10.0);
  CHECK(f2.radius == 1.0);
  const double ks[] = {0.01, 0.1, 1.0, 10.0};
  const char* names[] = {"fig1a", "fig1b", "fig1c", "fig1d"};
  for (int i = 0; i < 4; ++i) CHECK(preset_config(names[i]).k == ks[i]);
  // Every figure has a preset.
  for (const char* fig : {"Fig. 1", "Fig. 2", "Fig. 4", "Fig. 5", "Fig. 6", "Fig. 7"}) {
    bool found = false;
    for (const PresetInfo& p : presets()) found = found || p.figure.rfind(fig, 0) == 0;
    CHECK(found);
  }
}

TEST_CASE("Wilson presets") {
  TempDir dir("wilson");
  const ScenarioResult inner = run_scenario(preset_config("wilson_fig7_inner"), dir.str());
  REQUIRE(inner.messages.size() == 1);
  CHECK(inner.messages[0] == "wilson = -1.000000+0.000000i");
  CHECK(std::abs(inner.value("wilson_re") + 1.0) < 1e-6);
  CHECK(inner.value("predicted_sign") == -1.0);
  const ScenarioResult outer = run_scenario(preset_config("wilson_fig7_outer"), dir.str());
  CHECK(outer.messages[0] == "wilson = 1.000000+0.000000i");
  CHECK(outer.value("enclosed_cis") == 2.0);
  CHECK(fs::exists(dir.path / "analysis/wilson.csv"));
}

TEST_CASE("low-energy hard disk overlaps the flux tube") {
  TempDir dir("xs");
  const ScenarioResult r = run_scenario(preset_config("fig1a_bluevsred"), dir.str());
  CHECK(r.value("max_rel_dev_away_from_forward") < 0.02);
  const std::string table = slurp(dir.path / "analysis/crosssection.csv");
  CHECK(table.rfind("theta,k_dsigma,pure_ab,rel_dev\n", 0) == 0);
  int rows = 0;
  for (char ch : table) rows += ch == '\n';
  CHECK(rows == 361);
}

TEST_CASE("propagation bundle layout and determinism") {
  const ScenarioConfig c = parse_config(
      "[run]\nscenario = fig6_row1_left\nn_steps = 40\nsnapshot_every = 20\n"
      "[grid]\nn_xi = 64\nn_eta = 64\n");
  TempDir a("bundle_a"), b("bundle_b");
  const ScenarioResult ra = run_scenario(c, a.str());
  run_scenario(c, b.str());
  for (const char* rel : {"config.echo.ini", "diagnostics.csv", "snap_0.field", "snap_1.field",
                          "snap_2.field", "analysis/summary.csv", "analysis/dislocations.csv",
                          "analysis/dislocations_segments.csv"}) {
    CAPTURE(rel);
    REQUIRE(fs::exists(a.path / rel));
    CHECK(slurp(a.path / rel) == slurp(b.path / rel));
  }
  CHECK(parse_config(slurp(a.path / "config.echo.ini")) == c);
  const std::string diag = slurp(a.path / "diagnostics.csv");
  CHECK(diag.rfind("step,tau,norm,p_ground,p_excited,absorbed,backscatter\n", 0) == 0);
  CHECK(ra.value("steps") == 40.0);
  CHECK(ra.value("snapshots") == 3.0);
  // The dumps are adiabatic for this preset and carry the surviving norm.
  const SpinorField last = read_field((a.path / "snap_2.field").string());
  CHECK(std::abs(norm(last) - ra.value("norm")) < 1e-12);
}

TEST_CASE("dump analysis reads back a field scenario") {
  TempDir dir("field");
  ScenarioConfig c = preset_config("fig2_k1");
  c.n_xi = c.n_eta = 128;
  const ScenarioResult r = run_scenario(c, dir.str());
  TempDir out("field_analysis");
  const ScenarioResult again = analyse_dump((dir.path / "snap_0.field").string(), c, out.str());
  CHECK(again.value("segments") == r.value("segments"));
  CHECK(again.value("marked_cells") == r.value("marked_cells"));
  CHECK_FAILS_WITH(analyse_dump((dir.path / "missing.field").string(), c, out.str()), ErrorKind::Io);
}

TEST_CASE("surfaces preset") {
  TempDir dir("surf");
  const ScenarioResult r = run_scenario(preset_config("fig5_surfaces"), dir.str());
  CHECK(fs::exists(dir.path / "analysis/surfaces.csv"));
  CHECK(fs::exists(dir.path / "analysis/beta_levels.csv"));
  // Lower energy turns back earlier on the approach.
  CHECK(r.value("turning_point_beta_0.125") <= r.value("turning_point_beta_1"));
}
