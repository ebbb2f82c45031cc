// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#include "poch/run_config.hpp"

#include "poch/error.hpp"
#include "poch/util.hpp"

namespace poch::model {

const char* run_mode_name(RunMode mode) {
  return mode == RunMode::NoTrace ? "no_trace" : "multi_trace";
}

RunMode run_mode_from_name(const std::string& name) {
  if (name == "no_trace") return RunMode::NoTrace;
  if (name == "multi_trace") return RunMode::MultiTrace;
  throw Error(ErrorCode::MalformedConfig, "unknown mode '" + name + "'");
}

namespace {

const char* agent_kind_name(AgentKind kind) {
  return kind == AgentKind::Remote ? "remote" : "scripted";
}

AgentKind agent_kind_from_name(const std::string& name) {
  if (name == "remote") return AgentKind::Remote;
  if (name == "scripted") return AgentKind::Scripted;
  throw Error(ErrorCode::MalformedConfig, "unknown agent backend kind '" + name + "'");
}

const char* retention_name(WorkspaceRetention r) {
  switch (r) {
    case WorkspaceRetention::Delete: return "delete";
    case WorkspaceRetention::OnFailure: return "on_failure";
    case WorkspaceRetention::Always: return "always";
  }
  return "delete";
}

WorkspaceRetention retention_from_name(const std::string& name) {
  if (name == "delete") return WorkspaceRetention::Delete;
  if (name == "on_failure") return WorkspaceRetention::OnFailure;
  if (name == "always") return WorkspaceRetention::Always;
  throw Error(ErrorCode::MalformedConfig, "unknown keep_workspaces value '" + name + "'");
}

int positive_int(const nlohmann::json& v, const char* field) {
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::MalformedConfig, std::string(field) + " must be an integer");
  }
  int n = v.get<int>();
  if (n <= 0) {
    throw Error(ErrorCode::MalformedConfig, std::string(field) + " must be positive");
  }
  return n;
}

constexpr const char* kDefaultSourceConstraint =
    "Respond with exactly one complete, self-contained Java source file.";

}  // namespace

RunConfig default_run_config() {
  RunConfig c;
  c.source_constraint = kDefaultSourceConstraint;
  return c;
}

void to_json(nlohmann::json& j, const AgentBackendDescriptor& d) {
  j = nlohmann::json{{"kind", agent_kind_name(d.kind)},
                     {"endpoint_or_script_dir", d.endpoint_or_script_dir}};
  if (d.model_name) j["model_name"] = *d.model_name;
  if (d.credential_env) j["credential_env"] = *d.credential_env;
}

void from_json(const nlohmann::json& j, AgentBackendDescriptor& d) {
  d.kind = agent_kind_from_name(j.value("kind", std::string("scripted")));
  d.endpoint_or_script_dir = j.value("endpoint_or_script_dir", std::string());
  if (j.contains("model_name")) d.model_name = j.at("model_name").get<std::string>();
  if (j.contains("credential_env")) d.credential_env = j.at("credential_env").get<std::string>();
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"mode", run_mode_name(c.mode)},
                     {"top_k", c.top_k},
                     {"budget", c.budget},
                     {"agent_backend", c.agent_backend},
                     {"marker", c.marker},
                     {"output_cap_bytes", c.output_cap_bytes},
                     {"feedback_output_cap", c.feedback_output_cap},
                     {"stop_early", c.stop_early},
                     {"parallel", c.parallel},
                     {"max_procs", c.max_procs},
                     {"keep_workspaces", retention_name(c.keep_workspaces)},
                     {"source_constraint", c.source_constraint},
                     {"rank_with_agent", c.rank_with_agent},
                     {"strict_dynamic_log", c.strict_dynamic_log}};
  if (c.timeout_override_seconds) j["timeout_seconds"] = *c.timeout_override_seconds;
  if (!c.scratch_dir.empty()) j["scratch_dir"] = c.scratch_dir;
  if (!c.template_dir.empty()) j["template_dir"] = c.template_dir;
  if (!c.guidance_cache_dir.empty()) j["guidance_cache_dir"] = c.guidance_cache_dir;
  if (!c.log_adapter_path.empty()) j["log_adapter"] = c.log_adapter_path;
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  c = default_run_config();
  if (!j.is_object()) {
    throw Error(ErrorCode::MalformedConfig, "config root must be an object");
  }
  if (j.contains("mode")) c.mode = run_mode_from_name(j.at("mode").get<std::string>());
  if (j.contains("top_k")) c.top_k = positive_int(j.at("top_k"), "top_k");
  if (j.contains("budget")) c.budget = positive_int(j.at("budget"), "budget");
  if (j.contains("agent_backend")) c.agent_backend = j.at("agent_backend").get<AgentBackendDescriptor>();
  if (j.contains("marker")) {
    c.marker = j.at("marker").get<std::string>();
    if (c.marker.empty()) {
      throw Error(ErrorCode::MalformedConfig, "marker must be non-empty");
    }
  }
  if (j.contains("timeout_seconds")) {
    c.timeout_override_seconds = positive_int(j.at("timeout_seconds"), "timeout_seconds");
  }
  if (j.contains("output_cap_bytes")) {
    c.output_cap_bytes = static_cast<std::size_t>(positive_int(j.at("output_cap_bytes"), "output_cap_bytes"));
  }
  if (j.contains("feedback_output_cap")) {
    c.feedback_output_cap = static_cast<std::size_t>(positive_int(j.at("feedback_output_cap"), "feedback_output_cap"));
  }
  if (j.contains("stop_early")) c.stop_early = j.at("stop_early").get<bool>();
  if (j.contains("parallel")) c.parallel = positive_int(j.at("parallel"), "parallel");
  if (j.contains("max_procs")) c.max_procs = positive_int(j.at("max_procs"), "max_procs");
  if (j.contains("keep_workspaces")) {
    c.keep_workspaces = retention_from_name(j.at("keep_workspaces").get<std::string>());
  }
  if (j.contains("scratch_dir")) c.scratch_dir = j.at("scratch_dir").get<std::string>();
  if (j.contains("template_dir")) c.template_dir = j.at("template_dir").get<std::string>();
  if (j.contains("guidance_cache_dir")) c.guidance_cache_dir = j.at("guidance_cache_dir").get<std::string>();
  if (j.contains("log_adapter")) c.log_adapter_path = j.at("log_adapter").get<std::string>();
  if (j.contains("source_constraint")) c.source_constraint = j.at("source_constraint").get<std::string>();
  if (j.contains("rank_with_agent")) c.rank_with_agent = j.at("rank_with_agent").get<bool>();
  if (j.contains("strict_dynamic_log")) c.strict_dynamic_log = j.at("strict_dynamic_log").get<bool>();
}

RunConfig parse_run_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    std::string trimmed = util::trim(text);
    j = trimmed.empty() ? nlohmann::json::object() : nlohmann::json::parse(trimmed);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedConfig, e.what());
  }
  return j.get<RunConfig>();
}

RunConfig load_run_config(const std::filesystem::path& config_path) {
  if (!std::filesystem::exists(config_path)) {
    throw Error(ErrorCode::MalformedConfig, "config not found: " + config_path.string());
  }
  return parse_run_config_text(util::read_file(config_path));
}

void apply_config_override(RunConfig& config, const std::string& key, const std::string& value) {
  auto parse_positive = [&](const std::string& v) {
    int n = 0;
    try {
      n = std::stoi(v);
    } catch (...) {
      throw Error(ErrorCode::MalformedConfig, key + " needs an integer, got '" + v + "'");
    }
    if (n <= 0) throw Error(ErrorCode::MalformedConfig, key + " must be positive");
    return n;
  };
  auto parse_bool = [&](const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error(ErrorCode::MalformedConfig, key + " needs a boolean, got '" + v + "'");
  };

  if (key == "mode") {
    config.mode = run_mode_from_name(value);
  } else if (key == "top_k") {
    config.top_k = parse_positive(value);
  } else if (key == "budget") {
    config.budget = parse_positive(value);
  } else if (key == "marker") {
    if (value.empty()) throw Error(ErrorCode::MalformedConfig, "marker must be non-empty");
    config.marker = value;
  } else if (key == "timeout") {
    config.timeout_override_seconds = parse_positive(value);
  } else if (key == "stop_early") {
    config.stop_early = parse_bool(value);
  } else if (key == "parallel") {
    config.parallel = parse_positive(value);
  } else if (key == "max_procs") {
    config.max_procs = parse_positive(value);
  } else if (key == "agent") {
    // "<kind>:<endpoint-or-dir>"
    auto colon = value.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= value.size()) {
      throw Error(ErrorCode::MalformedConfig,
                  "agent needs '<kind>:<endpoint-or-dir>', got '" + value + "'");
    }
    config.agent_backend.kind = agent_kind_from_name(value.substr(0, colon));
    config.agent_backend.endpoint_or_script_dir = value.substr(colon + 1);
  } else if (key == "model") {
    config.agent_backend.model_name = value;
  } else if (key == "credential_env") {
    config.agent_backend.credential_env = value;
  } else if (key == "keep_workspaces") {
    config.keep_workspaces = retention_from_name(value);
  } else if (key == "scratch_dir") {
    config.scratch_dir = value;
  } else if (key == "template_dir") {
    config.template_dir = value;
  } else if (key == "guidance_cache_dir") {
    config.guidance_cache_dir = value;
  } else if (key == "log_adapter") {
    config.log_adapter_path = value;
  } else if (key == "source_constraint") {
    config.source_constraint = value;
  } else if (key == "rank_with_agent") {
    config.rank_with_agent = parse_bool(value);
  } else if (key == "strict_dynamic_log") {
    config.strict_dynamic_log = parse_bool(value);
  } else if (key == "output_cap_bytes") {
    config.output_cap_bytes = static_cast<std::size_t>(parse_positive(value));
  } else if (key == "feedback_output_cap") {
    config.feedback_output_cap = static_cast<std::size_t>(parse_positive(value));
  } else {
    throw Error(ErrorCode::MalformedConfig, "unknown config key '" + key + "'");
  }
}

std::string config_label(const RunConfig& config) {
  std::string agent = config.agent_backend.model_name.value_or(
      agent_kind_name(config.agent_backend.kind));
  return agent + "/" + run_mode_name(config.mode);
}

}  // namespace poch::model
