// samplus command line: sample / validate / learn / eval over PPDDL files.
// Talks to the core exclusively through the shared library's C interface.

#include <samplus.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitEmptyInput = 3;
constexpr int kExitScriptFailure = 4;
constexpr int kExitValidationFailure = 5;

struct Text {
  char* value = nullptr;
  ~Text() { samplus_string_free(value); }
};

struct DomainHandle {
  samplus_domain* ptr = nullptr;
  ~DomainHandle() { samplus_domain_free(ptr); }
};

struct ProblemHandle {
  samplus_problem* ptr = nullptr;
  ~ProblemHandle() { samplus_problem_free(ptr); }
};

struct TrajHandle {
  samplus_trajectories* ptr = nullptr;
  ~TrajHandle() { samplus_trajectories_free(ptr); }
};

struct ModelHandle {
  samplus_model* ptr = nullptr;
  ~ModelHandle() { samplus_model_free(ptr); }
};

struct ValidationHandle {
  samplus_validation* ptr = nullptr;
  ~ValidationHandle() { samplus_validation_free(ptr); }
};

struct EvalHandle {
  samplus_evaluation* ptr = nullptr;
  ~EvalHandle() { samplus_evaluation_free(ptr); }
};

int exit_for(samplus_status status) {
  switch (status) {
    case SAMPLUS_OK:
      return kExitOk;
    case SAMPLUS_ERR_EMPTY:
      return kExitEmptyInput;
    case SAMPLUS_ERR_SCRIPT:
      return kExitScriptFailure;
    default:
      return kExitUsage;
  }
}

int report_error(samplus_status status) {
  std::cerr << "samplus: error: " << samplus_last_error() << "\n";
  return exit_for(status);
}

std::optional<std::string> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

unsigned thread_cap() {
  const char* env = std::getenv("SAMPLUS_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return 1;
  return static_cast<unsigned>(v > 64 ? 64 : v);
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Every file-producing command drops a manifest next to its output so the
// run can be reproduced: inputs are recorded by content digest.
int write_manifest(const std::string& out_path,
                   const std::vector<std::string>& command,
                   const std::vector<std::string>& inputs, json extra) {
  json manifest;
  manifest["schema_version"] = 1;
  manifest["tool"] = "samplus";
  manifest["version"] = samplus_version();
  manifest["command"] = command;
  manifest["inputs"] = json::array();
  for (const auto& path : inputs) {
    auto bytes = read_bytes(path);
    if (!bytes) {
      std::cerr << "samplus: error: cannot digest '" << path << "'\n";
      return kExitUsage;
    }
    manifest["inputs"].push_back({{"path", path}, {"sha256", sha256_hex(*bytes)}});
  }
  manifest.update(extra);
  manifest["timestamp"] = utc_timestamp();
  if (!write_file(out_path + ".manifest.json", manifest.dump(2) + "\n")) {
    std::cerr << "samplus: error: cannot write '" << out_path << ".manifest.json'\n";
    return kExitUsage;
  }
  return kExitOk;
}

struct LearnArgs {
  std::vector<std::string> trajectories;
  double delta = 0.0;
  std::string mode;
  std::string domain;
  int precision = 6;
  std::string out;
};

int run_learn(const LearnArgs& args, const std::vector<std::string>& command) {
  DomainHandle dom;
  if (!args.domain.empty()) {
    if (auto rc = samplus_domain_load(args.domain.c_str(), &dom.ptr)) {
      return report_error(rc);
    }
  }

  std::vector<const char*> paths;
  for (const auto& p : args.trajectories) paths.push_back(p.c_str());
  TrajHandle ts;
  if (auto rc = samplus_trajectories_load(paths.data(), paths.size(), dom.ptr,
                                          &ts.ptr)) {
    return report_error(rc);
  }

  samplus_learn_config cfg = {};
  cfg.delta = args.delta;
  cfg.mode = args.mode == "point" ? SAMPLUS_MODE_POINT : SAMPLUS_MODE_INTERVAL;
  ModelHandle model;
  if (auto rc = samplus_learn(ts.ptr, &cfg, dom.ptr, &model.ptr)) {
    return report_error(rc);
  }

  Text text;
  if (auto rc = samplus_model_emit(model.ptr, args.precision, &text.value)) {
    return report_error(rc);
  }
  if (!write_file(args.out, text.value)) {
    std::cerr << "samplus: error: cannot write '" << args.out << "'\n";
    return kExitUsage;
  }

  std::vector<std::string> inputs = args.trajectories;
  if (!args.domain.empty()) inputs.push_back(args.domain);
  json extra = {{"delta", args.delta}, {"mode", args.mode}, {"seed", nullptr}};
  if (int rc = write_manifest(args.out, command, inputs, extra)) return rc;

  std::cerr << "samplus: learned " << samplus_model_action_count(model.ptr)
            << " actions (" << samplus_model_unobserved_count(model.ptr)
            << " unobserved) from " << samplus_trajectories_count(ts.ptr)
            << " trajectories -> " << args.out << "\n";
  return kExitOk;
}

struct SampleArgs {
  std::string domain;
  std::string problem;
  std::uint64_t episodes = 0;
  std::uint64_t seed = 0;
  std::string policy;
  std::uint64_t max_steps = 100;
  bool stop_on_goal = false;
  std::string out;
};

int run_sample(const SampleArgs& args, const std::vector<std::string>& command) {
  DomainHandle dom;
  if (auto rc = samplus_domain_load(args.domain.c_str(), &dom.ptr)) {
    return report_error(rc);
  }
  ProblemHandle prob;
  if (auto rc = samplus_problem_load(args.problem.c_str(), dom.ptr, &prob.ptr)) {
    return report_error(rc);
  }

  samplus_sample_config cfg = {};
  cfg.seed = args.seed;
  cfg.episodes = args.episodes;
  cfg.max_steps = args.max_steps;
  cfg.stop_on_goal = args.stop_on_goal ? 1 : 0;
  cfg.threads = thread_cap();

  std::vector<std::string> script_names;
  std::vector<const char*> script;
  if (args.policy == "random") {
    cfg.policy = SAMPLUS_POLICY_RANDOM;
  } else if (args.policy.rfind("script:", 0) == 0) {
    cfg.policy = SAMPLUS_POLICY_SCRIPT;
    std::string rest = args.policy.substr(7);
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t comma = rest.find(',', start);
      std::string name = rest.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!name.empty()) script_names.push_back(name);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    for (const auto& n : script_names) script.push_back(n.c_str());
    cfg.script = script.data();
    cfg.script_len = script.size();
  } else {
    std::cerr << "samplus: error: --policy must be random or script:<a1,a2,...>\n";
    return kExitUsage;
  }

  TrajHandle ts;
  if (auto rc = samplus_sample(dom.ptr, prob.ptr, &cfg, &ts.ptr)) {
    return report_error(rc);
  }

  Text text;
  if (auto rc = samplus_trajectories_emit(ts.ptr, &text.value)) {
    return report_error(rc);
  }
  if (!write_file(args.out, text.value)) {
    std::cerr << "samplus: error: cannot write '" << args.out << "'\n";
    return kExitUsage;
  }

  json extra = {{"seed", args.seed}, {"delta", nullptr}, {"mode", nullptr}};
  if (int rc = write_manifest(args.out, command, {args.domain, args.problem},
                              extra)) {
    return rc;
  }
  std::cerr << "samplus: sampled " << samplus_trajectories_count(ts.ptr)
            << " trajectories -> " << args.out << "\n";
  return kExitOk;
}

struct ValidateArgs {
  std::string domain;
  std::vector<std::string> trajectories;
  bool as_json = false;
};

int run_validate(const ValidateArgs& args) {
  DomainHandle dom;
  if (auto rc = samplus_domain_load(args.domain.c_str(), &dom.ptr)) {
    return report_error(rc);
  }
  std::vector<const char*> paths;
  for (const auto& p : args.trajectories) paths.push_back(p.c_str());
  TrajHandle ts;
  if (auto rc = samplus_trajectories_load(paths.data(), paths.size(), dom.ptr,
                                          &ts.ptr)) {
    return report_error(rc);
  }
  ValidationHandle report;
  if (auto rc = samplus_validate(ts.ptr, dom.ptr, &report.ptr)) {
    return report_error(rc);
  }
  Text text;
  if (auto rc = samplus_validation_render(report.ptr, args.as_json ? 1 : 0,
                                          &text.value)) {
    return report_error(rc);
  }
  std::cout << text.value;
  return samplus_validation_violations(report.ptr) == 0 ? kExitOk
                                                        : kExitValidationFailure;
}

struct EvalArgs {
  std::string learned;
  std::string truth;
  bool as_json = false;
  bool allow_extra = false;
};

int run_eval(const EvalArgs& args) {
  DomainHandle learned;
  if (auto rc = samplus_domain_load(args.learned.c_str(), &learned.ptr)) {
    return report_error(rc);
  }
  DomainHandle truth;
  if (auto rc = samplus_domain_load(args.truth.c_str(), &truth.ptr)) {
    return report_error(rc);
  }
  EvalHandle report;
  if (auto rc = samplus_evaluate(learned.ptr, truth.ptr, &report.ptr)) {
    return report_error(rc);
  }
  Text text;
  if (auto rc = samplus_evaluation_render(report.ptr, args.as_json ? 1 : 0,
                                          &text.value)) {
    return report_error(rc);
  }
  std::cout << text.value;
  if (samplus_evaluation_extra_actions(report.ptr) > 0 && !args.allow_extra) {
    std::cerr << "samplus: error: learned model declares actions absent from "
                 "the truth model (pass --allow-extra to tolerate)\n";
    return kExitValidationFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"samplus: learn stochastic PPDDL action models from trajectories"};
  app.set_version_flag("--version", std::string("samplus ") + samplus_version());
  app.require_subcommand(1);

  LearnArgs learn_args;
  CLI::App* learn_cmd =
      app.add_subcommand("learn", "learn an action model from trajectory files");
  learn_cmd->add_option("--trajectories", learn_args.trajectories,
                        "trajectory files (.traj)")
      ->required();
  learn_cmd->add_option("--delta", learn_args.delta, "confidence parameter in (0,1)")
      ->required()
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  learn_cmd->add_option("--mode", learn_args.mode, "estimate form")
      ->required()
      ->check(CLI::IsMember({"interval", "point"}));
  learn_cmd->add_option("--domain", learn_args.domain,
                        "optional domain file fixing the vocabulary");
  learn_cmd->add_option("--precision", learn_args.precision,
                        "decimal places for probabilities")
      ->default_val(6)
      ->check(CLI::Range(1, 12));
  learn_cmd->add_option("--out", learn_args.out, "output file for the learned model")
      ->required();

  SampleArgs sample_args;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "sample trajectories from a domain");
  sample_cmd->add_option("--domain", sample_args.domain, "domain file")->required();
  sample_cmd->add_option("--problem", sample_args.problem, "problem file")
      ->required();
  sample_cmd->add_option("--episodes", sample_args.episodes, "episode count")
      ->required()
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample_args.seed, "random seed")->required();
  sample_cmd->add_option("--policy", sample_args.policy,
                         "random or script:<a1,a2,...>")
      ->required();
  sample_cmd->add_option("--max-steps", sample_args.max_steps,
                         "step budget per episode")
      ->default_val(100)
      ->check(CLI::PositiveNumber);
  sample_cmd->add_flag("--stop-on-goal", sample_args.stop_on_goal,
                       "end an episode once the goal holds");
  sample_cmd->add_option("--out", sample_args.out, "output trajectory file")
      ->required();

  ValidateArgs validate_args;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "check trajectories for consistency with a domain");
  validate_cmd->add_option("--domain", validate_args.domain, "domain file")
      ->required();
  validate_cmd
      ->add_option("--trajectories", validate_args.trajectories,
                   "trajectory files")
      ->required();
  validate_cmd->add_flag("--json", validate_args.as_json, "emit a JSON report");

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "compare a learned model against a ground-truth domain");
  eval_cmd->add_option("--learned", eval_args.learned, "learned model file")
      ->required();
  eval_cmd->add_option("--truth", eval_args.truth, "ground-truth domain file")
      ->required();
  eval_cmd->add_flag("--json", eval_args.as_json, "emit a JSON report");
  eval_cmd->add_flag("--allow-extra", eval_args.allow_extra,
                     "tolerate learned actions absent from the truth model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::vector<std::string> command(argv, argv + argc);
  if (learn_cmd->parsed()) return run_learn(learn_args, command);
  if (sample_cmd->parsed()) return run_sample(sample_args, command);
  if (validate_cmd->parsed()) return run_validate(validate_args);
  if (eval_cmd->parsed()) return run_eval(eval_args);
  return kExitUsage;
}
