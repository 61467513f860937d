#include "samplus.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/evaluate.hpp"
#include "core/learner.hpp"
#include "core/sampler.hpp"
#include "core/syntax.hpp"
#include "core/trajectory.hpp"

using namespace samplus;

struct samplus_domain {
  Domain value;
};
struct samplus_problem {
  Problem value;
};
struct samplus_trajectories {
  TrajectorySet value;
};
struct samplus_model {
  LearnedModel value;
};
struct samplus_validation {
  ValidationReport value;
};
struct samplus_evaluation {
  EvalReport value;
};

namespace {

thread_local std::string g_last_error;

samplus_status status_of(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::io:
      return SAMPLUS_ERR_IO;
    case ErrorKind::syntax:
      return SAMPLUS_ERR_SYNTAX;
    case ErrorKind::semantic:
      return SAMPLUS_ERR_SEMANTIC;
    case ErrorKind::vocabulary:
      return SAMPLUS_ERR_VOCABULARY;
    case ErrorKind::config:
      return SAMPLUS_ERR_CONFIG;
    case ErrorKind::empty_input:
      return SAMPLUS_ERR_EMPTY;
    case ErrorKind::script_violation:
      return SAMPLUS_ERR_SCRIPT;
  }
  return SAMPLUS_ERR_INTERNAL;
}

template <typename Fn>
samplus_status guarded(Fn&& fn) {
  try {
    fn();
    return SAMPLUS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SAMPLUS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SAMPLUS_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

samplus_status require_args(bool ok) {
  if (!ok) g_last_error = "null argument";
  return ok ? SAMPLUS_OK : SAMPLUS_ERR_CONFIG;
}

}  // namespace

extern "C" {

const char* samplus_version(void) { return "0.1.0"; }

const char* samplus_last_error(void) { return g_last_error.c_str(); }

void samplus_string_free(char* s) { delete[] s; }

/* ---- domains ------------------------------------------------------ */

samplus_status samplus_domain_parse(const char* text, size_t len,
                                    samplus_domain** out) {
  if (auto rc = require_args(text && out)) return rc;
  return guarded([&] {
    *out = new samplus_domain{parse_domain(std::string_view(text, len))};
  });
}

samplus_status samplus_domain_load(const char* path, samplus_domain** out) {
  if (auto rc = require_args(path && out)) return rc;
  return guarded([&] {
    std::string text = read_file(path);
    try {
      *out = new samplus_domain{parse_domain(text)};
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.span(), std::string(path) + ": " + e.message(),
                       e.expected());
    }
  });
}

void samplus_domain_free(samplus_domain* dom) { delete dom; }

samplus_status samplus_domain_emit(const samplus_domain* dom, int precision,
                                   char** out_text) {
  if (auto rc = require_args(dom && out_text)) return rc;
  return guarded([&] {
    if (precision < 1) throw Error(ErrorKind::config, "precision must be >= 1");
    *out_text = copy_string(emit_domain(dom->value, precision));
  });
}

const char* samplus_domain_name(const samplus_domain* dom) {
  return dom ? dom->value.name.c_str() : nullptr;
}

size_t samplus_domain_fluent_count(const samplus_domain* dom) {
  return dom ? dom->value.fluents->size() : 0;
}

const char* samplus_domain_fluent_name(const samplus_domain* dom, size_t index) {
  if (!dom || index >= dom->value.fluents->size()) return nullptr;
  return dom->value.fluents->name(index).c_str();
}

size_t samplus_domain_action_count(const samplus_domain* dom) {
  return dom ? dom->value.actions.size() : 0;
}

const char* samplus_domain_action_name(const samplus_domain* dom, size_t index) {
  if (!dom || index >= dom->value.actions.size()) return nullptr;
  return dom->value.actions[index].name.c_str();
}

/* ---- problems ------------------------------------------------------ */

samplus_status samplus_problem_parse(const char* text, size_t len,
                                     const samplus_domain* dom,
                                     samplus_problem** out) {
  if (auto rc = require_args(text && dom && out)) return rc;
  return guarded([&] {
    *out = new samplus_problem{
        parse_problem(std::string_view(text, len), dom->value)};
  });
}

samplus_status samplus_problem_load(const char* path, const samplus_domain* dom,
                                    samplus_problem** out) {
  if (auto rc = require_args(path && dom && out)) return rc;
  return guarded([&] {
    std::string text = read_file(path);
    try {
      *out = new samplus_problem{parse_problem(text, dom->value)};
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.span(), std::string(path) + ": " + e.message(),
                       e.expected());
    }
  });
}

void samplus_problem_free(samplus_problem* prob) { delete prob; }

/* ---- trajectories ---------------------------------------------------- */

samplus_status samplus_trajectories_parse(const char* text, size_t len,
                                          const samplus_domain* dom,
                                          samplus_trajectories** out) {
  if (auto rc = require_args(text && out)) return rc;
  return guarded([&] {
    *out = new samplus_trajectories{parse_trajectories(
        std::string_view(text, len), dom ? &dom->value : nullptr)};
  });
}

samplus_status samplus_trajectories_load(const char* const* paths,
                                         size_t path_count,
                                         const samplus_domain* dom,
                                         samplus_trajectories** out) {
  if (auto rc = require_args(paths && out)) return rc;
  return guarded([&] {
    std::vector<std::string> files(paths, paths + path_count);
    *out = new samplus_trajectories{
        load_trajectories(files, dom ? &dom->value : nullptr)};
  });
}

void samplus_trajectories_free(samplus_trajectories* ts) { delete ts; }

size_t samplus_trajectories_count(const samplus_trajectories* ts) {
  return ts ? ts->value.entries.size() : 0;
}

samplus_status samplus_trajectories_emit(const samplus_trajectories* ts,
                                         char** out_text) {
  if (auto rc = require_args(ts && out_text)) return rc;
  return guarded([&] { *out_text = copy_string(emit_trajectories(ts->value)); });
}

/* ---- sampling --------------------------------------------------------- */

samplus_status samplus_sample(const samplus_domain* dom,
                              const samplus_problem* prob,
                              const samplus_sample_config* cfg,
                              samplus_trajectories** out) {
  if (auto rc = require_args(dom && prob && cfg && out)) return rc;
  return guarded([&] {
    SampleConfig config;
    config.seed = cfg->seed;
    config.episodes = cfg->episodes;
    config.max_steps = cfg->max_steps;
    config.policy =
        cfg->policy == SAMPLUS_POLICY_SCRIPT ? Policy::script : Policy::random;
    for (size_t i = 0; i < cfg->script_len; ++i) {
      if (!cfg->script || !cfg->script[i]) {
        throw Error(ErrorKind::config, "null script entry");
      }
      config.script.emplace_back(cfg->script[i]);
    }
    config.stop_on_goal = cfg->stop_on_goal != 0;
    config.threads = cfg->threads;
    *out = new samplus_trajectories{sample(dom->value, prob->value, config)};
  });
}

/* ---- validation --------------------------------------------------------- */

samplus_status samplus_validate(const samplus_trajectories* ts,
                                const samplus_domain* dom,
                                samplus_validation** out) {
  if (auto rc = require_args(ts && dom && out)) return rc;
  return guarded(
      [&] { *out = new samplus_validation{validate(ts->value, dom->value)}; });
}

void samplus_validation_free(samplus_validation* report) { delete report; }

size_t samplus_validation_violations(const samplus_validation* report) {
  return report ? report->value.violations.size() : 0;
}

samplus_status samplus_validation_render(const samplus_validation* report,
                                         int as_json, char** out_text) {
  if (auto rc = require_args(report && out_text)) return rc;
  return guarded([&] {
    *out_text = copy_string(as_json ? render_json(report->value)
                                    : render_text(report->value));
  });
}

/* ---- learning ------------------------------------------------------------ */

samplus_status samplus_learn(const samplus_trajectories* ts,
                             const samplus_learn_config* cfg,
                             const samplus_domain* dom, samplus_model** out) {
  if (auto rc = require_args(ts && cfg && out)) return rc;
  return guarded([&] {
    LearnerConfig config;
    config.delta = cfg->delta;
    config.mode =
        cfg->mode == SAMPLUS_MODE_POINT ? LearnMode::point : LearnMode::interval;
    if (cfg->fluent_count_override > 0) {
      config.fluent_count_override = cfg->fluent_count_override;
    }
    if (cfg->action_count_override > 0) {
      config.action_count_override = cfg->action_count_override;
    }
    *out = new samplus_model{
        learn(ts->value, config, dom ? &dom->value : nullptr)};
  });
}

void samplus_model_free(samplus_model* model) { delete model; }

size_t samplus_model_action_count(const samplus_model* model) {
  return model ? model->value.actions.size() : 0;
}

size_t samplus_model_unobserved_count(const samplus_model* model) {
  return model ? model->value.unobserved_actions.size() : 0;
}

const char* samplus_model_unobserved_name(const samplus_model* model,
                                          size_t index) {
  if (!model || index >= model->value.unobserved_actions.size()) return nullptr;
  return model->value.unobserved_actions[index].c_str();
}

samplus_status samplus_model_emit(const samplus_model* model, int precision,
                                  char** out_text) {
  if (auto rc = require_args(model && out_text)) return rc;
  return guarded([&] {
    if (precision < 1) throw Error(ErrorKind::config, "precision must be >= 1");
    *out_text = copy_string(emit_learned(model->value, precision));
  });
}

/* ---- evaluation ------------------------------------------------------------ */

samplus_status samplus_evaluate(const samplus_domain* learned,
                                const samplus_domain* truth,
                                samplus_evaluation** out) {
  if (auto rc = require_args(learned && truth && out)) return rc;
  return guarded([&] {
    *out = new samplus_evaluation{evaluate(learned->value, truth->value)};
  });
}

void samplus_evaluation_free(samplus_evaluation* report) { delete report; }

int samplus_evaluation_all_contained(const samplus_evaluation* report) {
  return report && report->value.all_contained() ? 1 : 0;
}

size_t samplus_evaluation_extra_actions(const samplus_evaluation* report) {
  return report ? report->value.extra_actions.size() : 0;
}

samplus_status samplus_evaluation_render(const samplus_evaluation* report,
                                         int as_json, char** out_text) {
  if (auto rc = require_args(report && out_text)) return rc;
  return guarded([&] {
    *out_text = copy_string(as_json ? render_json(report->value)
                                    : render_text(report->value));
  });
}

}  // extern "C"
