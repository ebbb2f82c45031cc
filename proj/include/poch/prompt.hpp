// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "poch/instance.hpp"
#include "poch/run_config.hpp"
#include "poch/trace.hpp"

namespace poch::prompt {

enum class PromptKind { CveGuidance, TraceSelection, PocMain, PocRetry };

const char* prompt_kind_name(PromptKind kind);

// A fully assembled prompt. text has no unresolved {{PLACEHOLDER}}s;
// inputs_digest is a content hash over the kind, the template and every
// substituted input, so identical inputs always yield identical digests.
struct PromptBundle {
  PromptKind kind = PromptKind::PocMain;
  std::string text;
  std::string inputs_digest;
};

struct CweCriteria {
  std::string cwe_id;
  std::string criteria_text;
};

// Options that parameterize the main prompt; derive from a RunConfig via
// prompt_options_from.
struct PromptOptions {
  std::string marker = "[VULN]";
  std::string source_constraint =
      "Respond with exactly one complete, self-contained Java source file.";
  std::string template_dir;  // empty: built-in assets
};

PromptOptions prompt_options_from(const model::RunConfig& config);

// Returns the criteria block for a CWE: one of the shipped per-CWE assets
// (CWE-22, -78, -79, -89, -94), or the generic block for anything else.
// The id must match CWE-<digits>.
CweCriteria criteria_for(const std::string& cwe_id, const std::string& template_dir = "");

// Template substitution. Every {{NAME}} in the template must be present
// in values (unknown placeholders throw TemplateError); values may
// themselves contain braces and are never re-scanned.
std::string render_template(const std::string& template_text,
                            const std::map<std::string, std::string>& values);

// Loads a named template ("poc_main", "cve_guidance", "trace_selection",
// "feedback_header") from template_dir when set, else the built-in asset.
std::string load_template(const std::string& name, const std::string& template_dir = "");

PromptBundle build_cve_guidance_prompt(const model::ProblemInstance& instance,
                                       const PromptOptions& options = {});

PromptBundle build_trace_selection_prompt(const model::ProblemInstance& instance,
                                          const std::vector<trace::StaticTrace>& traces,
                                          const PromptOptions& options = {});

// The main PoC prompt. The trace section is present iff a trace is given;
// a feedback section is appended iff feedback is given, in which case the
// bundle kind is PocRetry and its text starts with the exact PocMain text.
PromptBundle build_main_prompt(const model::ProblemInstance& instance,
                               const std::optional<trace::StaticTrace>& trace,
                               const CweCriteria& criteria,
                               const std::optional<std::string>& feedback,
                               const PromptOptions& options = {});

}  // namespace poch::prompt
