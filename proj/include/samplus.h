/*
 * samplus — learning stochastic PPDDL action models from trajectories.
 *
 * C interface of the shared library. All objects are opaque handles owned
 * by the library; every *_free accepts NULL. Functions returning
 * samplus_status set a thread-local message retrievable via
 * samplus_last_error() on failure. Strings returned through char** out
 * parameters are heap-allocated and released with samplus_string_free().
 */

#ifndef SAMPLUS_H
#define SAMPLUS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SAMPLUS_API __declspec(dllexport)
#else
#define SAMPLUS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum samplus_status {
  SAMPLUS_OK = 0,
  SAMPLUS_ERR_IO = 1,
  SAMPLUS_ERR_SYNTAX = 2,
  SAMPLUS_ERR_SEMANTIC = 3,
  SAMPLUS_ERR_VOCABULARY = 4,
  SAMPLUS_ERR_CONFIG = 5,
  SAMPLUS_ERR_EMPTY = 6,
  SAMPLUS_ERR_SCRIPT = 7,
  SAMPLUS_ERR_INTERNAL = 8
} samplus_status;

typedef struct samplus_domain samplus_domain;
typedef struct samplus_problem samplus_problem;
typedef struct samplus_trajectories samplus_trajectories;
typedef struct samplus_model samplus_model;
typedef struct samplus_validation samplus_validation;
typedef struct samplus_evaluation samplus_evaluation;

SAMPLUS_API const char* samplus_version(void);

/* message describing the most recent failure on this thread */
SAMPLUS_API const char* samplus_last_error(void);

SAMPLUS_API void samplus_string_free(char* s);

/* ---- PPDDL domains and problems ---------------------------------- */

SAMPLUS_API samplus_status samplus_domain_parse(const char* text, size_t len,
                                                samplus_domain** out);
SAMPLUS_API samplus_status samplus_domain_load(const char* path,
                                               samplus_domain** out);
SAMPLUS_API void samplus_domain_free(samplus_domain* dom);

SAMPLUS_API samplus_status samplus_domain_emit(const samplus_domain* dom,
                                               int precision, char** out_text);

SAMPLUS_API const char* samplus_domain_name(const samplus_domain* dom);
SAMPLUS_API size_t samplus_domain_fluent_count(const samplus_domain* dom);
SAMPLUS_API const char* samplus_domain_fluent_name(const samplus_domain* dom,
                                                   size_t index);
SAMPLUS_API size_t samplus_domain_action_count(const samplus_domain* dom);
SAMPLUS_API const char* samplus_domain_action_name(const samplus_domain* dom,
                                                   size_t index);

SAMPLUS_API samplus_status samplus_problem_parse(const char* text, size_t len,
                                                 const samplus_domain* dom,
                                                 samplus_problem** out);
SAMPLUS_API samplus_status samplus_problem_load(const char* path,
                                                const samplus_domain* dom,
                                                samplus_problem** out);
SAMPLUS_API void samplus_problem_free(samplus_problem* prob);

/* ---- trajectory sets ---------------------------------------------- */

/* dom may be NULL: the vocabulary is then inferred from the inputs */
SAMPLUS_API samplus_status samplus_trajectories_parse(const char* text, size_t len,
                                                      const samplus_domain* dom,
                                                      samplus_trajectories** out);
SAMPLUS_API samplus_status samplus_trajectories_load(const char* const* paths,
                                                     size_t path_count,
                                                     const samplus_domain* dom,
                                                     samplus_trajectories** out);
SAMPLUS_API void samplus_trajectories_free(samplus_trajectories* ts);

SAMPLUS_API size_t samplus_trajectories_count(const samplus_trajectories* ts);
SAMPLUS_API samplus_status samplus_trajectories_emit(const samplus_trajectories* ts,
                                                     char** out_text);

/* ---- seeded sampling ----------------------------------------------- */

enum { SAMPLUS_POLICY_RANDOM = 0, SAMPLUS_POLICY_SCRIPT = 1 };

typedef struct samplus_sample_config {
  uint64_t seed;
  uint64_t episodes;  /* >= 1 */
  uint64_t max_steps; /* >= 1 */
  int policy;         /* SAMPLUS_POLICY_* */
  const char* const* script; /* script actions; used by the script policy */
  size_t script_len;
  int stop_on_goal; /* nonzero ends an episode once the goal holds */
  unsigned threads; /* 0 or 1 = serial; the result does not depend on it */
} samplus_sample_config;

SAMPLUS_API samplus_status samplus_sample(const samplus_domain* dom,
                                          const samplus_problem* prob,
                                          const samplus_sample_config* cfg,
                                          samplus_trajectories** out);

/* ---- validation ----------------------------------------------------- */

SAMPLUS_API samplus_status samplus_validate(const samplus_trajectories* ts,
                                            const samplus_domain* dom,
                                            samplus_validation** out);
SAMPLUS_API void samplus_validation_free(samplus_validation* report);
SAMPLUS_API size_t samplus_validation_violations(const samplus_validation* report);
SAMPLUS_API samplus_status samplus_validation_render(const samplus_validation* report,
                                                     int as_json, char** out_text);

/* ---- learning -------------------------------------------------------- */

enum { SAMPLUS_MODE_INTERVAL = 0, SAMPLUS_MODE_POINT = 1 };

typedef struct samplus_learn_config {
  double delta; /* strictly between 0 and 1 */
  int mode;     /* SAMPLUS_MODE_* */
  uint64_t fluent_count_override; /* 0 = derive from domain or inputs */
  uint64_t action_count_override; /* 0 = derive from domain or inputs */
} samplus_learn_config;

/* dom may be NULL; it supplies the vocabulary, the union-bound constants
 * and the unobserved-action list when present */
SAMPLUS_API samplus_status samplus_learn(const samplus_trajectories* ts,
                                         const samplus_learn_config* cfg,
                                         const samplus_domain* dom,
                                         samplus_model** out);
SAMPLUS_API void samplus_model_free(samplus_model* model);

SAMPLUS_API size_t samplus_model_action_count(const samplus_model* model);
SAMPLUS_API size_t samplus_model_unobserved_count(const samplus_model* model);
SAMPLUS_API const char* samplus_model_unobserved_name(const samplus_model* model,
                                                      size_t index);

/* PPDDL(-IP) text of the learned model, unobserved actions in a header
 * comment */
SAMPLUS_API samplus_status samplus_model_emit(const samplus_model* model,
                                              int precision, char** out_text);

/* ---- evaluation against a ground truth ------------------------------ */

SAMPLUS_API samplus_status samplus_evaluate(const samplus_domain* learned,
                                            const samplus_domain* truth,
                                            samplus_evaluation** out);
SAMPLUS_API void samplus_evaluation_free(samplus_evaluation* report);
SAMPLUS_API int samplus_evaluation_all_contained(const samplus_evaluation* report);
SAMPLUS_API size_t samplus_evaluation_extra_actions(const samplus_evaluation* report);
SAMPLUS_API samplus_status samplus_evaluation_render(const samplus_evaluation* report,
                                                     int as_json, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* SAMPLUS_H */
