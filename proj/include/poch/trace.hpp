// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "poch/location.hpp"

namespace poch::trace {

enum class StepKind { Source, Intermediate, Sink };

const char* step_kind_name(StepKind kind);
StepKind step_kind_from_name(const std::string& name);  // throws MalformedTrace

struct TraceStep {
  CodeLocation location;
  StepKind kind = StepKind::Intermediate;
  std::optional<std::string> snippet;

  bool operator==(const TraceStep&) const = default;
};

// An ordered source->sink dataflow path from static taint analysis.
// Invariants: >= 2 steps, first is Source, last is Sink, the rest are
// Intermediate; trace_id unique within an instance.
struct StaticTrace {
  std::string trace_id;
  std::vector<TraceStep> steps;

  bool operator==(const StaticTrace&) const = default;
};

struct ExecutionEvent {
  CodeLocation location;
  int sequence = 0;

  bool operator==(const ExecutionEvent&) const = default;
};

// The sequence of instrumented method executions observed while running a
// candidate. May be empty (the run touched no instrumented method).
struct DynamicTrace {
  std::vector<ExecutionEvent> events;

  bool operator==(const DynamicTrace&) const = default;
};

struct CoverageSummary {
  bool source_hit = false;
  bool sink_hit = false;
  int steps_executed = 0;
  int steps_total = 0;
  double coverage = 0.0;
};

// ---- static trace files -------------------------------------------------
//
// Canonical format, line oriented:
//
//   # comment
//   trace <trace_id>
//     step <kind> <class_fqn>#<method> <file>[:<line>]
//       snippet <one line of code>
//     ...
//   end
//
// <kind> is source | intermediate | sink. An empty class_fqn is written
// as "-". File paths must not contain whitespace; the line suffix is the
// last ":<digits>" of the location token.

std::vector<StaticTrace> parse_static_traces(const std::filesystem::path& file);
std::vector<StaticTrace> parse_static_traces_text(const std::string& text);
std::string serialize_static_traces(const std::vector<StaticTrace>& traces);

// Deterministic text block for prompts: one line per step with index,
// kind, file:line, class.method, plus the snippet when present. The sink
// step is explicitly labeled.
std::string format_trace_for_prompt(const StaticTrace& trace);

// Top-k selection by similarity to hint locations. Score of a trace is
// the maximum token overlap over all (hint, step) pairs, tokens being the
// file stem, the class_fqn segments and the method name (lowercased).
// Ties keep the original file order; empty hints keep the original order.
std::vector<StaticTrace> rank_traces(const std::vector<StaticTrace>& traces,
                                     const std::vector<CodeLocation>& hints,
                                     int k);

// Exposed for the ranking oracle tests.
std::vector<std::string> location_tokens(const CodeLocation& loc);
int similarity_score(const StaticTrace& trace, const std::vector<CodeLocation>& hints);

// ---- dynamic logs -------------------------------------------------------
//
// Event-line grammar: `EVT <class_fqn>.<method> <file>[:<line>]`. The
// method is the segment after the last '.' of the first token. Canonical
// emissions always include the line; parsing accepts its absence. All
// non-matching lines are ignored unless strict is set, in which case a
// line starting with "EVT " that fails the grammar raises MalformedEvent.

DynamicTrace parse_dynamic_log(const std::string& log_text, bool strict = false);
std::string serialize_dynamic_trace(const DynamicTrace& dyn);

// Method-granularity location match: method names equal AND (class fqns
// equal when both are non-empty, otherwise normalized file paths equal).
// Line numbers are deliberately ignored.
bool match_location(const CodeLocation& step_loc, const CodeLocation& event_loc);

CoverageSummary coverage_summary(const StaticTrace& trace, const DynamicTrace& dyn);
bool sink_hit(const StaticTrace& trace, const DynamicTrace& dyn);

// Human-readable coverage line used in feedback and run logs.
std::string format_coverage(const CoverageSummary& cov);

// ---- foreign log adapter ------------------------------------------------
//
// A log adapter rewrites foreign instrumentation output into the EVT
// grammar, one rule per line of input. Config format (JSON):
//   {"rules": [{"match": "<ECMAScript regex>", "emit": "EVT $1.$2 $3:$4"}]}
// The first matching rule wins; $N are capture-group references. Lines
// matching no rule are passed through unchanged.

struct LogAdapter {
  struct Rule {
    std::string match;
    std::string emit;
  };
  std::vector<Rule> rules;
};

LogAdapter load_log_adapter(const std::filesystem::path& config);
LogAdapter parse_log_adapter(const std::string& config_text);
std::string apply_log_adapter(const LogAdapter& adapter, const std::string& log_text);

void to_json(nlohmann::json& j, const TraceStep& s);
void from_json(const nlohmann::json& j, TraceStep& s);
void to_json(nlohmann::json& j, const StaticTrace& t);
void from_json(const nlohmann::json& j, StaticTrace& t);
void to_json(nlohmann::json& j, const ExecutionEvent& e);
void from_json(const nlohmann::json& j, ExecutionEvent& e);
void to_json(nlohmann::json& j, const DynamicTrace& d);
void from_json(const nlohmann::json& j, DynamicTrace& d);
void to_json(nlohmann::json& j, const CoverageSummary& c);
void from_json(const nlohmann::json& j, CoverageSummary& c);

// Checks the StaticTrace invariants, throwing InvariantViolation naming
// the trace_id on failure.
void check_trace_invariants(const StaticTrace& trace);

}  // namespace poch::trace
