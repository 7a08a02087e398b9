#ifndef CISCAT_CISCAT_H
#define CISCAT_CISCAT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CISCAT_BUILDING_LIBRARY)
#    define CISCAT_API __declspec(dllexport)
#  else
#    define CISCAT_API __declspec(dllimport)
#  endif
#else
#  define CISCAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call that can fail returns a status; the message of the most recent
   failure on the calling thread is available from ciscat_last_error(). */
typedef enum ciscat_status {
  CISCAT_OK = 0,
  CISCAT_ERR_ARGUMENT = 1, /* null handle or pointer, index out of range */
  CISCAT_ERR_CONFIG = 2,
  CISCAT_ERR_IO = 3,
  CISCAT_ERR_INVALID_FIELD = 4,
  CISCAT_ERR_INVALID_GRID = 5,
  CISCAT_ERR_SINGULAR_BASIS = 6,
  CISCAT_ERR_DOMAIN = 7,
  CISCAT_ERR_CONTRACT = 8,
  CISCAT_ERR_NUMERICAL = 9,
  CISCAT_ERR_QUADRATURE = 10,
  CISCAT_ERR_TRUNCATION = 11,
  CISCAT_ERR_DEGENERATE_CI = 12,
  CISCAT_ERR_NODAL_CROSSING = 13,
  CISCAT_ERR_DIVERGENCE = 14,
  CISCAT_ERR_ILL_CONDITIONED = 15,
  CISCAT_ERR_BUFFER_TOO_SMALL = 16,
  CISCAT_ERR_INTERNAL = 99
} ciscat_status;

typedef struct ciscat_config ciscat_config;
typedef struct ciscat_result ciscat_result;
typedef struct ciscat_field ciscat_field;

CISCAT_API const char* ciscat_version(void);
CISCAT_API const char* ciscat_last_error(void);
CISCAT_API const char* ciscat_status_name(ciscat_status status);

/* Configs. parse/load collect every problem into one message, one per line. */
CISCAT_API ciscat_status ciscat_config_parse(const char* text, ciscat_config** out);
CISCAT_API ciscat_status ciscat_config_load(const char* path, ciscat_config** out);
/* Defaults with no scenario; enough for ciscat_analyse_dump. */
CISCAT_API ciscat_status ciscat_config_default(ciscat_config** out);
CISCAT_API ciscat_status ciscat_config_preset(const char* name, ciscat_config** out);
CISCAT_API ciscat_status ciscat_config_set(ciscat_config* config, const char* section,
                                           const char* key, const char* value);
/* Writes the full echoed config; *needed always receives the size including
   the terminating zero. */
CISCAT_API ciscat_status ciscat_config_echo(const ciscat_config* config, char* buffer,
                                            size_t capacity, size_t* needed);
CISCAT_API const char* ciscat_config_subcommand(const ciscat_config* config);
CISCAT_API const char* ciscat_config_scenario(const ciscat_config* config);
CISCAT_API void ciscat_config_free(ciscat_config* config);

/* Runs and writes the artifact bundle into outdir. */
CISCAT_API ciscat_status ciscat_run(const ciscat_config* config, const char* outdir,
                                    ciscat_result** out);
/* Dislocation analysis of a field dump; config may be null for defaults. */
CISCAT_API ciscat_status ciscat_analyse_dump(const char* field_path, const ciscat_config* config,
                                             const char* outdir, ciscat_result** out);

CISCAT_API size_t ciscat_result_message_count(const ciscat_result* result);
CISCAT_API const char* ciscat_result_message(const ciscat_result* result, size_t index);
CISCAT_API size_t ciscat_result_value_count(const ciscat_result* result);
CISCAT_API const char* ciscat_result_key(const ciscat_result* result, size_t index);
CISCAT_API double ciscat_result_value_at(const ciscat_result* result, size_t index);
CISCAT_API ciscat_status ciscat_result_value(const ciscat_result* result, const char* key,
                                             double* value);
CISCAT_API void ciscat_result_free(ciscat_result* result);

CISCAT_API size_t ciscat_preset_count(void);
CISCAT_API ciscat_status ciscat_preset_info(size_t index, const char** name,
                                            const char** subcommand, const char** figure,
                                            const char** description);

/* CISCAT-FIELD dumps. */
CISCAT_API ciscat_status ciscat_field_read(const char* path, ciscat_field** out);
CISCAT_API ciscat_status ciscat_field_dims(const ciscat_field* field, int* n_xi, int* n_eta);
CISCAT_API ciscat_status ciscat_field_norm(const ciscat_field* field, double* norm);
CISCAT_API void ciscat_field_free(ciscat_field* field);

#ifdef __cplusplus
}
#endif

#endif
