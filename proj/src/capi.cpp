#include "ciscat/ciscat.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "field.hpp"
#include "scenario.hpp"

struct ciscat_config {
  ciscat::ScenarioConfig value;
};

struct ciscat_result {
  ciscat::ScenarioResult value;
};

struct ciscat_field {
  ciscat::SpinorField value;
};

namespace {

thread_local std::string last_error;

ciscat_status code_of(ciscat::ErrorKind kind) {
  using ciscat::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidField: return CISCAT_ERR_INVALID_FIELD;
    case ErrorKind::InvalidGrid: return CISCAT_ERR_INVALID_GRID;
    case ErrorKind::SingularBasis: return CISCAT_ERR_SINGULAR_BASIS;
    case ErrorKind::Domain: return CISCAT_ERR_DOMAIN;
    case ErrorKind::ContractViolation: return CISCAT_ERR_CONTRACT;
    case ErrorKind::Config: return CISCAT_ERR_CONFIG;
    case ErrorKind::Numerical: return CISCAT_ERR_NUMERICAL;
    case ErrorKind::Quadrature: return CISCAT_ERR_QUADRATURE;
    case ErrorKind::Truncation: return CISCAT_ERR_TRUNCATION;
    case ErrorKind::DegenerateCI: return CISCAT_ERR_DEGENERATE_CI;
    case ErrorKind::NodalCrossing: return CISCAT_ERR_NODAL_CROSSING;
    case ErrorKind::Divergence: return CISCAT_ERR_DIVERGENCE;
    case ErrorKind::IllConditioned: return CISCAT_ERR_ILL_CONDITIONED;
    case ErrorKind::Io: return CISCAT_ERR_IO;
  }
  return CISCAT_ERR_INTERNAL;
}

template <class F>
ciscat_status guarded(F&& body) {
  try {
    body();
    return CISCAT_OK;
  } catch (const ciscat::Error& e) {
    last_error = e.what();
    return code_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CISCAT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CISCAT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return CISCAT_ERR_INTERNAL;
  }
}

ciscat_status bad_argument(const char* what) {
  last_error = what;
  return CISCAT_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ciscat_version(void) { return "1.0.0"; }

const char* ciscat_last_error(void) { return last_error.c_str(); }

const char* ciscat_status_name(ciscat_status status) {
  switch (status) {
    case CISCAT_OK: return "ok";
    case CISCAT_ERR_ARGUMENT: return "argument";
    case CISCAT_ERR_CONFIG: return "config";
    case CISCAT_ERR_IO: return "io";
    case CISCAT_ERR_INVALID_FIELD: return "invalid_field";
    case CISCAT_ERR_INVALID_GRID: return "invalid_grid";
    case CISCAT_ERR_SINGULAR_BASIS: return "singular_basis";
    case CISCAT_ERR_DOMAIN: return "domain";
    case CISCAT_ERR_CONTRACT: return "contract_violation";
    case CISCAT_ERR_NUMERICAL: return "numerical";
    case CISCAT_ERR_QUADRATURE: return "quadrature";
    case CISCAT_ERR_TRUNCATION: return "truncation";
    case CISCAT_ERR_DEGENERATE_CI: return "degenerate_ci";
    case CISCAT_ERR_NODAL_CROSSING: return "nodal_crossing";
    case CISCAT_ERR_DIVERGENCE: return "divergence";
    case CISCAT_ERR_ILL_CONDITIONED: return "ill_conditioned";
    case CISCAT_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case CISCAT_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

ciscat_status ciscat_config_parse(const char* text, ciscat_config** out) {
  if (!text || !out) return bad_argument("ciscat_config_parse: null argument");
  *out = nullptr;
  return guarded([&] { *out = new ciscat_config{ciscat::parse_config(text)}; });
}

ciscat_status ciscat_config_load(const char* path, ciscat_config** out) {
  if (!path || !out) return bad_argument("ciscat_config_load: null argument");
  *out = nullptr;
  return guarded([&] { *out = new ciscat_config{ciscat::load_config(path)}; });
}

ciscat_status ciscat_config_default(ciscat_config** out) {
  if (!out) return bad_argument("ciscat_config_default: null argument");
  *out = nullptr;
  return guarded([&] { *out = new ciscat_config{}; });
}

ciscat_status ciscat_config_preset(const char* name, ciscat_config** out) {
  if (!name || !out) return bad_argument("ciscat_config_preset: null argument");
  *out = nullptr;
  return guarded([&] { *out = new ciscat_config{ciscat::preset_config(name)}; });
}

ciscat_status ciscat_config_set(ciscat_config* config, const char* section, const char* key,
                                const char* value) {
  if (!config || !section || !key || !value) return bad_argument("ciscat_config_set: null argument");
  return guarded([&] { ciscat::set_config_value(config->value, section, key, value); });
}

ciscat_status ciscat_config_echo(const ciscat_config* config, char* buffer, size_t capacity,
                                 size_t* needed) {
  if (!config) return bad_argument("ciscat_config_echo: null config");
  std::string text;
  const ciscat_status st = guarded([&] { text = ciscat::echo_config(config->value); });
  if (st != CISCAT_OK) return st;
  if (needed) *needed = text.size() + 1;
  if (!buffer || capacity < text.size() + 1) {
    last_error = "ciscat_config_echo: buffer too small";
    return CISCAT_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return CISCAT_OK;
}

const char* ciscat_config_subcommand(const ciscat_config* config) {
  return config ? ciscat::subcommand_of(config->value.kind) : "";
}

const char* ciscat_config_scenario(const ciscat_config* config) {
  return config ? config->value.scenario.c_str() : "";
}

void ciscat_config_free(ciscat_config* config) { delete config; }

ciscat_status ciscat_run(const ciscat_config* config, const char* outdir, ciscat_result** out) {
  if (!config || !outdir || !out) return bad_argument("ciscat_run: null argument");
  *out = nullptr;
  return guarded([&] { *out = new ciscat_result{ciscat::run_scenario(config->value, outdir)}; });
}

ciscat_status ciscat_analyse_dump(const char* field_path, const ciscat_config* config,
                                  const char* outdir, ciscat_result** out) {
  if (!field_path || !outdir || !out) return bad_argument("ciscat_analyse_dump: null argument");
  *out = nullptr;
  return guarded([&] {
    const ciscat::ScenarioConfig c = config ? config->value : ciscat::ScenarioConfig{};
    *out = new ciscat_result{ciscat::analyse_dump(field_path, c, outdir)};
  });
}

size_t ciscat_result_message_count(const ciscat_result* result) {
  return result ? result->value.messages.size() : 0;
}

const char* ciscat_result_message(const ciscat_result* result, size_t index) {
  if (!result || index >= result->value.messages.size()) return nullptr;
  return result->value.messages[index].c_str();
}

size_t ciscat_result_value_count(const ciscat_result* result) {
  return result ? result->value.summary.size() : 0;
}

const char* ciscat_result_key(const ciscat_result* result, size_t index) {
  if (!result || index >= result->value.summary.size()) return nullptr;
  return result->value.summary[index].first.c_str();
}

double ciscat_result_value_at(const ciscat_result* result, size_t index) {
  if (!result || index >= result->value.summary.size()) return 0.0;
  return result->value.summary[index].second;
}

ciscat_status ciscat_result_value(const ciscat_result* result, const char* key, double* value) {
  if (!result || !key || !value) return bad_argument("ciscat_result_value: null argument");
  for (const auto& [k, v] : result->value.summary)
    if (k == key) {
      *value = v;
      return CISCAT_OK;
    }
  return bad_argument("ciscat_result_value: no such key");
}

void ciscat_result_free(ciscat_result* result) { delete result; }

size_t ciscat_preset_count(void) { return ciscat::presets().size(); }

ciscat_status ciscat_preset_info(size_t index, const char** name, const char** subcommand,
                                 const char** figure, const char** description) {
  const auto& list = ciscat::presets();
  if (index >= list.size()) return bad_argument("ciscat_preset_info: index out of range");
  const ciscat::PresetInfo& p = list[index];
  if (name) *name = p.name.c_str();
  if (subcommand) *subcommand = ciscat::subcommand_of(p.kind);
  if (figure) *figure = p.figure.c_str();
  if (description) *description = p.description.c_str();
  return CISCAT_OK;
}

ciscat_status ciscat_field_read(const char* path, ciscat_field** out) {
  if (!path || !out) return bad_argument("ciscat_field_read: null argument");
  *out = nullptr;
  return guarded([&] { *out = new ciscat_field{ciscat::read_field(std::string(path))}; });
}

ciscat_status ciscat_field_dims(const ciscat_field* field, int* n_xi, int* n_eta) {
  if (!field) return bad_argument("ciscat_field_dims: null field");
  if (n_xi) *n_xi = field->value.grid.n_xi();
  if (n_eta) *n_eta = field->value.grid.n_eta();
  return CISCAT_OK;
}

ciscat_status ciscat_field_norm(const ciscat_field* field, double* norm) {
  if (!field || !norm) return bad_argument("ciscat_field_norm: null argument");
  return guarded([&] { *norm = ciscat::norm(field->value); });
}

void ciscat_field_free(ciscat_field* field) { delete field; }

}  // extern "C"
