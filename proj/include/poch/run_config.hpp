// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace poch::model {

enum class RunMode { NoTrace, MultiTrace };

const char* run_mode_name(RunMode mode);
RunMode run_mode_from_name(const std::string& name);  // throws MalformedConfig

enum class AgentKind { Remote, Scripted };

// Where PoC candidates come from: a chat-style remote endpoint or a
// directory of replay fixtures. The scripted directory's existence is
// checked when the backend is instantiated, not here.
struct AgentBackendDescriptor {
  AgentKind kind = AgentKind::Scripted;
  std::string endpoint_or_script_dir;
  std::optional<std::string> model_name;
  std::optional<std::string> credential_env;

  bool operator==(const AgentBackendDescriptor&) const = default;
};

enum class WorkspaceRetention { Delete, OnFailure, Always };

struct RunConfig {
  RunMode mode = RunMode::NoTrace;
  int top_k = 5;
  int budget = 5;
  AgentBackendDescriptor agent_backend;
  std::string marker = "[VULN]";

  // harness knobs (documented defaults, all overridable)
  std::optional<int> timeout_override_seconds;
  std::size_t output_cap_bytes = 262144;
  std::size_t feedback_output_cap = 4096;
  bool stop_early = false;
  int parallel = 1;
  int max_procs = 8;
  WorkspaceRetention keep_workspaces = WorkspaceRetention::Delete;
  std::string scratch_dir;         // empty: <run_dir>/work
  std::string template_dir;        // empty: built-in assets
  std::string guidance_cache_dir;  // empty: no cached-guidance lookup during runs
  std::string log_adapter_path;    // empty: no adapter
  std::string source_constraint;   // prompt constraint on the PoC artifact
  bool rank_with_agent = false;
  bool strict_dynamic_log = false;

  bool operator==(const RunConfig&) const = default;
};

RunConfig default_run_config();
RunConfig load_run_config(const std::filesystem::path& config_path);
RunConfig parse_run_config_text(const std::string& text);

// String-keyed override used by the C API and CLI flag plumbing.
// Throws MalformedConfig for unknown keys or unparsable values.
void apply_config_override(RunConfig& config, const std::string& key, const std::string& value);

void to_json(nlohmann::json& j, const AgentBackendDescriptor& d);
void from_json(const nlohmann::json& j, AgentBackendDescriptor& d);
void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

// Short label used as the "config" grouping key in reports,
// e.g. "scripted/multi_trace" or "gpt-x/no_trace".
std::string config_label(const RunConfig& config);

}  // namespace poch::model
