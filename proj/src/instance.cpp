// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#include "poch/instance.hpp"

#include <set>

#include "poch/error.hpp"
#include "poch/util.hpp"

namespace poch::model {

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) {
    throw Error(ErrorCode::MissingField, field);
  }
  return *it;
}

std::string require_string(const nlohmann::json& j, const char* field) {
  const auto& v = require(j, field);
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw Error(ErrorCode::MissingField, field);
  }
  return v.get<std::string>();
}

std::string resolve_manifest_dir(std::string text, const std::filesystem::path& base_dir) {
  util::replace_all(text, "{MANIFEST_DIR}", base_dir.string());
  return text;
}

}  // namespace

void to_json(nlohmann::json& j, const ProjectMeta& m) {
  j = nlohmann::json{{"commit", m.commit},
                     {"module_path", m.module_path},
                     {"build_script_template", m.build_script_template},
                     {"run_command_template", m.run_command_template},
                     {"timeout_seconds", m.timeout_seconds}};
  if (!m.instrumentation_log_template.empty()) {
    j["instrumentation_log"] = m.instrumentation_log_template;
  }
}

void from_json(const nlohmann::json& j, ProjectMeta& m) {
  m.commit = require_string(j, "commit");
  m.module_path = require_string(j, "module_path");
  m.build_script_template = j.value("build_script_template", std::string());
  m.run_command_template = require_string(j, "run_command_template");
  m.instrumentation_log_template = j.value("instrumentation_log", std::string());
  m.timeout_seconds = require(j, "timeout_seconds").get<int>();
}

void to_json(nlohmann::json& j, const ProblemInstance& i) {
  j = nlohmann::json{{"id", i.id},
                     {"cwe_id", i.cwe_id},
                     {"project_slug", i.project_slug},
                     {"vul_ref", i.vul_ref},
                     {"fix_ref", i.fix_ref},
                     {"cve_description", i.cve_description},
                     {"cwe_description", i.cwe_description},
                     {"meta", i.meta},
                     {"ground_truth", i.ground_truth},
                     {"traces", i.traces},
                     {"posthoc_enabled", i.posthoc_enabled}};
  if (i.cve_guidance) j["cve_guidance"] = *i.cve_guidance;
}

ProblemInstance parse_instance_json(const nlohmann::json& j,
                                    const std::filesystem::path& base_dir) {
  if (!j.is_object()) {
    throw Error(ErrorCode::MalformedManifest, "manifest root must be an object");
  }
  ProblemInstance inst;
  inst.id = require_string(j, "id");
  inst.cwe_id = require_string(j, "cwe_id");
  inst.project_slug = require_string(j, "project_slug");
  inst.vul_ref = require_string(j, "vul_ref");
  inst.fix_ref = require_string(j, "fix_ref");
  inst.cve_description = require_string(j, "cve_description");
  inst.cwe_description = require_string(j, "cwe_description");
  if (j.contains("cve_guidance") && !j.at("cve_guidance").is_null()) {
    inst.cve_guidance = j.at("cve_guidance").get<std::string>();
  }

  try {
    inst.meta = require(j, "meta").get<ProjectMeta>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedManifest, std::string("meta: ") + e.what());
  }
  inst.meta.build_script_template =
      resolve_manifest_dir(inst.meta.build_script_template, base_dir);
  inst.meta.run_command_template =
      resolve_manifest_dir(inst.meta.run_command_template, base_dir);

  if (inst.vul_ref == inst.fix_ref) {
    throw Error(ErrorCode::MalformedManifest, "vul_ref and fix_ref must be distinct");
  }
  if (inst.meta.timeout_seconds <= 0) {
    throw Error(ErrorCode::MalformedManifest, "meta.timeout_seconds must be positive");
  }
  if (inst.meta.run_command_template.find("{POC}") == std::string::npos) {
    throw Error(ErrorCode::MalformedManifest,
                "meta.run_command_template is missing the {POC} placeholder");
  }

  if (j.contains("ground_truth")) {
    try {
      inst.ground_truth = j.at("ground_truth").get<std::vector<CodeLocation>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedManifest, std::string("ground_truth: ") + e.what());
    }
  }
  for (const auto& loc : inst.ground_truth) {
    if (loc.file.empty() || loc.method.empty()) {
      throw Error(ErrorCode::MalformedManifest,
                  "ground_truth entries need non-empty file and method");
    }
  }
  inst.posthoc_enabled = j.value("posthoc_enabled", true);
  if (inst.posthoc_enabled && inst.ground_truth.empty()) {
    throw Error(ErrorCode::MissingField,
                "ground_truth (required unless posthoc_enabled is false)");
  }

  // Traces: either inline ("traces") or referenced files ("trace_files").
  std::set<std::string> trace_ids;
  if (j.contains("traces")) {
    try {
      inst.traces = j.at("traces").get<std::vector<trace::StaticTrace>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedManifest, std::string("traces: ") + e.what());
    }
    for (const auto& t : inst.traces) trace::check_trace_invariants(t);
  } else if (j.contains("trace_files")) {
    for (const auto& rel : j.at("trace_files")) {
      auto path = base_dir / rel.get<std::string>();
      if (!std::filesystem::exists(path)) {
        throw Error(ErrorCode::DanglingReference, "trace file not found: " + path.string());
      }
      auto parsed = trace::parse_static_traces(path);
      inst.traces.insert(inst.traces.end(), parsed.begin(), parsed.end());
    }
  }
  for (const auto& t : inst.traces) {
    if (!trace_ids.insert(t.trace_id).second) {
      throw Error(ErrorCode::InvariantViolation, "duplicate trace_id '" + t.trace_id + "'");
    }
  }
  return inst;
}

ProblemInstance load_instance(const std::filesystem::path& manifest_path) {
  if (!std::filesystem::exists(manifest_path)) {
    throw Error(ErrorCode::DanglingReference, "manifest not found: " + manifest_path.string());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(util::read_file(manifest_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedManifest,
                manifest_path.string() + ": " + e.what());
  }
  auto base = std::filesystem::absolute(manifest_path).parent_path();
  return parse_instance_json(j, base);
}

std::string serialize_instance(const ProblemInstance& instance) {
  nlohmann::json j = instance;
  return j.dump(2) + "\n";
}

ProblemInstance parse_instance_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedManifest, e.what());
  }
  return parse_instance_json(j, std::filesystem::current_path());
}

std::vector<ProblemInstance> load_run_set(
    const std::vector<std::filesystem::path>& manifests) {
  std::vector<ProblemInstance> out;
  std::set<std::string> ids;
  for (const auto& path : manifests) {
    auto inst = load_instance(path);
    if (!ids.insert(inst.id).second) {
      throw Error(ErrorCode::InvariantViolation,
                  "duplicate instance id '" + inst.id + "' (" + path.string() + ")");
    }
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace poch::model
