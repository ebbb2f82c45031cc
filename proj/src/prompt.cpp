// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#include "poch/prompt.hpp"

#include <cctype>

#include "poch/assets.hpp"
#include "poch/error.hpp"
#include "poch/util.hpp"

namespace poch::prompt {

const char* prompt_kind_name(PromptKind kind) {
  switch (kind) {
    case PromptKind::CveGuidance: return "cve_guidance";
    case PromptKind::TraceSelection: return "trace_selection";
    case PromptKind::PocMain: return "poc_main";
    case PromptKind::PocRetry: return "poc_retry";
  }
  return "poc_main";
}

PromptOptions prompt_options_from(const model::RunConfig& config) {
  PromptOptions opts;
  opts.marker = config.marker;
  if (!config.source_constraint.empty()) {
    opts.source_constraint = config.source_constraint;
  }
  opts.template_dir = config.template_dir;
  return opts;
}

std::string load_template(const std::string& name, const std::string& template_dir) {
  if (!template_dir.empty()) {
    auto path = std::filesystem::path(template_dir) / (name + ".txt");
    if (std::filesystem::exists(path)) {
      return util::read_file(path);
    }
  }
  auto asset = assets::find_asset("templates/" + name + ".txt");
  if (!asset) {
    throw Error(ErrorCode::TemplateError, "no template named '" + name + "'");
  }
  return std::string(*asset);
}

CweCriteria criteria_for(const std::string& cwe_id, const std::string& template_dir) {
  // invariant: CWE-<digits>
  bool ok = util::starts_with(cwe_id, "CWE-") && cwe_id.size() > 4;
  for (std::size_t i = 4; ok && i < cwe_id.size(); ++i) {
    ok = std::isdigit(static_cast<unsigned char>(cwe_id[i])) != 0;
  }
  if (!ok) {
    throw Error(ErrorCode::InvariantViolation,
                "cwe_id must match CWE-<digits>, got '" + cwe_id + "'");
  }
  if (!template_dir.empty()) {
    auto path = std::filesystem::path(template_dir) / "cwe_criteria" / (cwe_id + ".txt");
    if (std::filesystem::exists(path)) {
      return {cwe_id, util::read_file(path)};
    }
  }
  auto asset = assets::find_asset("cwe_criteria/" + cwe_id + ".txt");
  if (!asset) {
    asset = assets::find_asset("cwe_criteria/generic.txt");
  }
  if (!asset) {
    throw Error(ErrorCode::TemplateError, "criteria assets missing");
  }
  return {cwe_id, std::string(*asset)};
}

std::string render_template(const std::string& template_text,
                            const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(template_text.size());
  std::size_t i = 0;
  while (i < template_text.size()) {
    auto open = template_text.find("{{", i);
    if (open == std::string::npos) {
      out.append(template_text, i, std::string::npos);
      break;
    }
    auto close = template_text.find("}}", open + 2);
    if (close == std::string::npos) {
      throw Error(ErrorCode::TemplateError, "unterminated '{{' in template");
    }
    out.append(template_text, i, open - i);
    std::string name = template_text.substr(open + 2, close - open - 2);
    auto it = values.find(name);
    if (it == values.end()) {
      throw Error(ErrorCode::TemplateError, "unknown placeholder '{{" + name + "}}'");
    }
    out.append(it->second);
    i = close + 2;
  }
  return out;
}

namespace {

PromptBundle make_bundle(PromptKind kind, std::string text,
                         const std::string& template_text,
                         const std::map<std::string, std::string>& values) {
  std::vector<std::string> fields;
  fields.emplace_back(prompt_kind_name(kind));
  fields.push_back(template_text);
  for (const auto& [k, v] : values) {
    fields.push_back(k);
    fields.push_back(v);
  }
  PromptBundle bundle;
  bundle.kind = kind;
  bundle.text = std::move(text);
  bundle.inputs_digest = util::digest_fields(fields);
  return bundle;
}

}  // namespace

PromptBundle build_cve_guidance_prompt(const model::ProblemInstance& instance,
                                       const PromptOptions& options) {
  if (instance.cve_description.empty()) {
    throw Error(ErrorCode::MissingContext, "cve_description");
  }
  if (instance.cwe_description.empty()) {
    throw Error(ErrorCode::MissingContext, "cwe_description");
  }
  auto tmpl = load_template("cve_guidance", options.template_dir);
  std::map<std::string, std::string> values = {
      {"CVE_ID", instance.id},
      {"CWE_ID", instance.cwe_id},
      {"PROJECT_SLUG", instance.project_slug},
      {"CVE_DESCRIPTION", instance.cve_description},
      {"CWE_DESCRIPTION", instance.cwe_description},
  };
  return make_bundle(PromptKind::CveGuidance, render_template(tmpl, values), tmpl, values);
}

PromptBundle build_trace_selection_prompt(const model::ProblemInstance& instance,
                                          const std::vector<trace::StaticTrace>& traces,
                                          const PromptOptions& options) {
  if (traces.empty()) {
    throw Error(ErrorCode::EmptyTraceSet, "trace selection needs at least one trace");
  }
  std::string blocks;
  for (const auto& t : traces) {
    blocks += trace::format_trace_for_prompt(t);
    blocks += "\n";
  }
  auto tmpl = load_template("trace_selection", options.template_dir);
  std::map<std::string, std::string> values = {
      {"CVE_ID", instance.id},
      {"CVE_DESCRIPTION", instance.cve_description},
      {"TRACE_COUNT", std::to_string(traces.size())},
      {"TRACE_BLOCKS", blocks},
  };
  return make_bundle(PromptKind::TraceSelection, render_template(tmpl, values), tmpl, values);
}

PromptBundle build_main_prompt(const model::ProblemInstance& instance,
                               const std::optional<trace::StaticTrace>& trace,
                               const CweCriteria& criteria,
                               const std::optional<std::string>& feedback,
                               const PromptOptions& options) {
  if (criteria.cwe_id != instance.cwe_id) {
    throw Error(ErrorCode::CriteriaMismatch,
                "criteria are for " + criteria.cwe_id + ", instance is " + instance.cwe_id);
  }

  std::string guidance_section;
  if (instance.cve_guidance && !instance.cve_guidance->empty()) {
    guidance_section =
        "\n## Vulnerability-specific guidance\n" + *instance.cve_guidance + "\n";
  }

  std::string trace_section;
  if (trace) {
    trace_section =
        "\n## Static analysis guidance\n"
        "The following source-to-sink dataflow trace was selected for this\n"
        "vulnerability. A valid PoC must cause the sink step to execute;\n"
        "instrumented method executions are compared against the trace steps.\n\n" +
        trace::format_trace_for_prompt(*trace);
  }

  auto tmpl = load_template("poc_main", options.template_dir);
  std::map<std::string, std::string> values = {
      {"CVE_ID", instance.id},
      {"CWE_ID", instance.cwe_id},
      {"CVE_DESCRIPTION", instance.cve_description},
      {"CWE_DESCRIPTION", instance.cwe_description},
      {"GUIDANCE_SECTION", guidance_section},
      {"CWE_CRITERIA", criteria.criteria_text},
      {"PROJECT_SLUG", instance.project_slug},
      {"COMMIT", instance.meta.commit},
      {"MODULE_PATH", instance.meta.module_path},
      {"BUILD_TEMPLATE",
       instance.meta.build_script_template.empty() ? "(none)"
                                                   : instance.meta.build_script_template},
      {"RUN_TEMPLATE", instance.meta.run_command_template},
      {"TRACE_SECTION", trace_section},
      {"SOURCE_CONSTRAINT", options.source_constraint},
      {"MARKER", options.marker},
  };
  std::string text = render_template(tmpl, values);

  PromptKind kind = PromptKind::PocMain;
  if (feedback) {
    kind = PromptKind::PocRetry;
    auto header = load_template("feedback_header", options.template_dir);
    std::map<std::string, std::string> fb_values = {{"FEEDBACK", *feedback}};
    text += render_template(header, fb_values);
    values.insert(fb_values.begin(), fb_values.end());
  }
  return make_bundle(kind, std::move(text), tmpl, values);
}

}  // namespace poch::prompt
