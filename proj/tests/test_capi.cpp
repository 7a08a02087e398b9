#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ciscat/ciscat.h"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& tag) {
  std::random_device rd;
  return fs::temp_directory_path() / ("ciscat_capi_" + tag + "_" + std::to_string(rd()));
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(ciscat_version()).size() > 0);
  CHECK(std::string(ciscat_status_name(CISCAT_OK)) == "ok");
  CHECK(std::string(ciscat_status_name(CISCAT_ERR_CONFIG)) == "config");
}

TEST_CASE("config parse errors come back as a status and message") {
  ciscat_config* cfg = nullptr;
  CHECK(ciscat_config_parse("", &cfg) == CISCAT_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(ciscat_last_error()).find("missing scenario") != std::string::npos);
  CHECK(ciscat_config_parse("[run]\nscenario = fig6_row1_left\nbeta = -1\nfoo = 2\n", &cfg) ==
        CISCAT_ERR_CONFIG);
  const std::string msg = ciscat_last_error();
  CHECK(msg.find("[run].beta") != std::string::npos);
  CHECK(msg.find("[run].foo") != std::string::npos);
  CHECK(ciscat_config_parse(nullptr, &cfg) == CISCAT_ERR_ARGUMENT);
  CHECK(ciscat_config_parse("[run]\nscenario = fig4\n", nullptr) == CISCAT_ERR_ARGUMENT);
  CHECK(ciscat_config_load("/nonexistent/ciscat.ini", &cfg) == CISCAT_ERR_CONFIG);
}

TEST_CASE("echo through a caller buffer") {
  ciscat_config* cfg = nullptr;
  REQUIRE(ciscat_config_preset("fig6_row3_right", &cfg) == CISCAT_OK);
  CHECK(std::string(ciscat_config_subcommand(cfg)) == "propagate");
  CHECK(std::string(ciscat_config_scenario(cfg)) == "fig6_row3_right");
  size_t needed = 0;
  char tiny[4];
  CHECK(ciscat_config_echo(cfg, tiny, sizeof tiny, &needed) == CISCAT_ERR_BUFFER_TOO_SMALL);
  REQUIRE(needed > 100);
  std::vector<char> buf(needed);
  REQUIRE(ciscat_config_echo(cfg, buf.data(), buf.size(), &needed) == CISCAT_OK);
  CHECK(std::string(buf.data()).find("beta = 0.125") != std::string::npos);

  // Reparsing the echo gives the same echo.
  ciscat_config* back = nullptr;
  REQUIRE(ciscat_config_parse(buf.data(), &back) == CISCAT_OK);
  std::vector<char> buf2(needed);
  REQUIRE(ciscat_config_echo(back, buf2.data(), buf2.size(), &needed) == CISCAT_OK);
  CHECK(std::string(buf.data()) == std::string(buf2.data()));
  ciscat_config_free(back);

  CHECK(ciscat_config_set(cfg, "run", "beta", "-2") == CISCAT_ERR_CONFIG);
  CHECK(ciscat_config_set(cfg, "run", "beta", "2") == CISCAT_OK);
  ciscat_config_free(cfg);
  ciscat_config_free(nullptr);
}

TEST_CASE("presets through the C API") {
  const size_t n = ciscat_preset_count();
  REQUIRE(n > 10);
  bool found = false;
  for (size_t i = 0; i < n; ++i) {
    const char *name, *sub, *fig, *desc;
    REQUIRE(ciscat_preset_info(i, &name, &sub, &fig, &desc) == CISCAT_OK);
    if (std::string(name) == "fig2_k10") {
      found = true;
      CHECK(std::string(sub) == "crosssection");
    }
  }
  CHECK(found);
  const char *name, *sub, *fig, *desc;
  CHECK(ciscat_preset_info(n, &name, &sub, &fig, &desc) == CISCAT_ERR_ARGUMENT);
  ciscat_config* cfg = nullptr;
  CHECK(ciscat_config_preset("no_such_preset", &cfg) == CISCAT_ERR_CONFIG);
}

TEST_CASE("run a Wilson scenario") {
  ciscat_config* cfg = nullptr;
  REQUIRE(ciscat_config_preset("wilson_fig7_inner", &cfg) == CISCAT_OK);
  const fs::path dir = scratch("wilson");
  ciscat_result* res = nullptr;
  REQUIRE(ciscat_run(cfg, dir.string().c_str(), &res) == CISCAT_OK);
  REQUIRE(ciscat_result_message_count(res) == 1);
  CHECK(std::string(ciscat_result_message(res, 0)) == "wilson = -1.000000+0.000000i");
  CHECK(ciscat_result_message(res, 1) == nullptr);
  double re = 0.0;
  REQUIRE(ciscat_result_value(res, "wilson_re", &re) == CISCAT_OK);
  CHECK(std::abs(re + 1.0) < 1e-6);
  CHECK(ciscat_result_value(res, "nope", &re) == CISCAT_ERR_ARGUMENT);
  REQUIRE(ciscat_result_value_count(res) > 0);
  CHECK(std::string(ciscat_result_key(res, 0)) == "wilson_re");
  CHECK(ciscat_result_value_at(res, 0) == re);
  ciscat_result_free(res);
  ciscat_config_free(cfg);
  CHECK(fs::exists(dir / "config.echo.ini"));
  fs::remove_all(dir);
}

TEST_CASE("fields and dump analysis") {
  ciscat_config* cfg = nullptr;
  REQUIRE(ciscat_config_parse("[run]\nscenario = fig2_k1\n[grid]\nn_xi = 64\nn_eta = 64\n", &cfg) ==
          CISCAT_OK);
  const fs::path dir = scratch("field");
  ciscat_result* res = nullptr;
  REQUIRE(ciscat_run(cfg, dir.string().c_str(), &res) == CISCAT_OK);
  ciscat_result_free(res);

  const std::string dump = (dir / "snap_0.field").string();
  ciscat_field* f = nullptr;
  REQUIRE(ciscat_field_read(dump.c_str(), &f) == CISCAT_OK);
  int nx = 0, ny = 0;
  REQUIRE(ciscat_field_dims(f, &nx, &ny) == CISCAT_OK);
  CHECK(nx == 64);
  CHECK(ny == 64);
  double nrm = 0.0;
  REQUIRE(ciscat_field_norm(f, &nrm) == CISCAT_OK);
  CHECK(nrm > 0.0);
  ciscat_field_free(f);

  const fs::path out = scratch("analysis");
  REQUIRE(ciscat_analyse_dump(dump.c_str(), nullptr, out.string().c_str(), &res) == CISCAT_OK);
  double segments = -1.0;
  CHECK(ciscat_result_value(res, "segments", &segments) == CISCAT_OK);
  CHECK(segments >= 0.0);
  ciscat_result_free(res);

  CHECK(ciscat_field_read((dir / "missing.field").string().c_str(), &f) == CISCAT_ERR_IO);
  CHECK(ciscat_run(nullptr, out.string().c_str(), &res) == CISCAT_ERR_ARGUMENT);
  ciscat_config_free(cfg);
  fs::remove_all(dir);
  fs::remove_all(out);
}
