// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "poch/location.hpp"
#include "poch/trace.hpp"

namespace poch::model {

// Build/run machinery of the target project. Templates may use the
// run-time placeholders {POC}, {WORKSPACE} and {EVT_LOG}; the load-time
// placeholder {MANIFEST_DIR} is resolved while the manifest is read.
struct ProjectMeta {
  std::string commit;
  std::string module_path;
  std::string build_script_template;  // empty: no separate build phase
  std::string run_command_template;
  std::string instrumentation_log_template;  // empty: scan captured output
  int timeout_seconds = 60;

  bool operator==(const ProjectMeta&) const = default;
};

// One vulnerability instance: the identifiers and descriptions, the
// vulnerable/patched refs, the project metadata and the candidate static
// traces. Immutable after loading.
struct ProblemInstance {
  std::string id;
  std::string cwe_id;
  std::string project_slug;
  std::string vul_ref;
  std::string fix_ref;
  std::string cve_description;
  std::string cwe_description;
  std::optional<std::string> cve_guidance;
  ProjectMeta meta;
  std::vector<CodeLocation> ground_truth;
  std::vector<trace::StaticTrace> traces;
  bool posthoc_enabled = true;

  bool operator==(const ProblemInstance&) const = default;
};

// Loads a manifest file. Trace files referenced by "trace_files" are
// resolved relative to the manifest directory and parsed with the trace
// engine; a manifest may instead inline traces under "traces" (this is
// what serialize_instance emits, so load(serialize(i)) == i).
ProblemInstance load_instance(const std::filesystem::path& manifest_path);
ProblemInstance parse_instance_json(const nlohmann::json& j,
                                    const std::filesystem::path& base_dir);

std::string serialize_instance(const ProblemInstance& instance);
ProblemInstance parse_instance_text(const std::string& text);

// Loads a set of manifests and rejects duplicate ids deterministically
// (the first duplicate in input order is reported).
std::vector<ProblemInstance> load_run_set(const std::vector<std::filesystem::path>& manifests);

void to_json(nlohmann::json& j, const ProjectMeta& m);
void from_json(const nlohmann::json& j, ProjectMeta& m);
void to_json(nlohmann::json& j, const ProblemInstance& i);

}  // namespace poch::model
