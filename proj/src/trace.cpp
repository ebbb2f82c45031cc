// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#include "poch/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <regex>
#include <set>
#include <sstream>

#include "poch/error.hpp"
#include "poch/util.hpp"

namespace poch {

std::string display(const CodeLocation& loc) {
  std::string out;
  if (!loc.class_fqn.empty()) {
    out = loc.class_fqn + "." + loc.method;
  } else {
    out = loc.method;
  }
  out += " (" + loc.file;
  if (loc.line) {
    out += ":" + std::to_string(*loc.line);
  }
  out += ")";
  return out;
}

void to_json(nlohmann::json& j, const CodeLocation& loc) {
  j = nlohmann::json{{"file", loc.file}, {"class_fqn", loc.class_fqn}, {"method", loc.method}};
  if (loc.line) j["line"] = *loc.line;
}

void from_json(const nlohmann::json& j, CodeLocation& loc) {
  loc.file = j.at("file").get<std::string>();
  loc.class_fqn = j.value("class_fqn", std::string());
  loc.method = j.at("method").get<std::string>();
  if (j.contains("line") && !j.at("line").is_null()) {
    loc.line = j.at("line").get<int>();
  } else {
    loc.line.reset();
  }
}

}  // namespace poch

namespace poch::trace {

const char* step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::Source: return "source";
    case StepKind::Intermediate: return "intermediate";
    case StepKind::Sink: return "sink";
  }
  return "intermediate";
}

StepKind step_kind_from_name(const std::string& name) {
  if (name == "source") return StepKind::Source;
  if (name == "intermediate") return StepKind::Intermediate;
  if (name == "sink") return StepKind::Sink;
  throw Error(ErrorCode::MalformedTrace, "unknown step kind '" + name + "'");
}

void check_trace_invariants(const StaticTrace& trace) {
  if (trace.trace_id.empty()) {
    throw Error(ErrorCode::InvariantViolation, "trace with empty trace_id");
  }
  if (trace.steps.size() < 2) {
    throw Error(ErrorCode::InvariantViolation,
                "trace '" + trace.trace_id + "' has fewer than 2 steps");
  }
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    StepKind expected = i == 0                       ? StepKind::Source
                        : i == trace.steps.size() - 1 ? StepKind::Sink
                                                      : StepKind::Intermediate;
    if (trace.steps[i].kind != expected) {
      throw Error(ErrorCode::InvariantViolation,
                  "trace '" + trace.trace_id + "' step " + std::to_string(i) +
                      " has kind '" + step_kind_name(trace.steps[i].kind) +
                      "', expected '" + step_kind_name(expected) + "'");
    }
  }
}

namespace {

// Splits "<file>[:<line>]" on the last ":<digits>" suffix.
std::pair<std::string, std::optional<int>> split_file_line(const std::string& token) {
  auto pos = token.rfind(':');
  if (pos != std::string::npos && pos + 1 < token.size()) {
    bool digits = true;
    for (std::size_t i = pos + 1; i < token.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
        digits = false;
        break;
      }
    }
    if (digits) {
      int line = std::stoi(token.substr(pos + 1));
      if (line > 0) {
        return {token.substr(0, pos), line};
      }
      return {token.substr(0, pos), std::nullopt};
    }
  }
  return {token, std::nullopt};
}

// Tokenizes a line on whitespace, keeping everything after `max_fields - 1`
// separators in the last field.
std::vector<std::string> fields(const std::string& line, std::size_t max_fields) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size() && out.size() + 1 < max_fields) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (i < line.size()) out.emplace_back(line.substr(i));
  return out;
}

}  // namespace

std::vector<StaticTrace> parse_static_traces_text(const std::string& text) {
  std::vector<StaticTrace> traces;
  std::optional<StaticTrace> current;
  std::set<std::string> seen_ids;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw Error(ErrorCode::MalformedTrace, "line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = util::trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (util::starts_with(line, "trace ")) {
      if (current) fail("'trace' before previous trace was closed with 'end'");
      std::string id = util::trim(line.substr(6));
      if (id.empty()) fail("trace with empty id");
      current = StaticTrace{id, {}};
    } else if (util::starts_with(line, "step ")) {
      if (!current) fail("'step' outside of a trace block");
      auto f = fields(line, 4);
      if (f.size() < 4) fail("step needs <kind> <class_fqn>#<method> <file>[:<line>]");
      TraceStep step;
      step.kind = step_kind_from_name(f[1]);
      auto hash = f[2].rfind('#');
      if (hash == std::string::npos) fail("location '" + f[2] + "' is missing '#' before the method");
      std::string cls = f[2].substr(0, hash);
      step.location.class_fqn = (cls == "-") ? std::string() : cls;
      step.location.method = f[2].substr(hash + 1);
      if (step.location.method.empty()) fail("empty method name");
      auto [file, ln] = split_file_line(f[3]);
      if (file.empty()) fail("empty file path");
      step.location.file = file;
      step.location.line = ln;
      current->steps.push_back(std::move(step));
    } else if (util::starts_with(line, "snippet")) {
      if (!current || current->steps.empty()) fail("'snippet' without a preceding step");
      current->steps.back().snippet = util::trim(line.substr(7));
    } else if (line == "end") {
      if (!current) fail("'end' without an open trace");
      check_trace_invariants(*current);
      if (!seen_ids.insert(current->trace_id).second) {
        throw Error(ErrorCode::InvariantViolation,
                    "duplicate trace_id '" + current->trace_id + "'");
      }
      traces.push_back(std::move(*current));
      current.reset();
    } else {
      fail("unrecognized directive: '" + line + "'");
    }
  }
  if (current) {
    throw Error(ErrorCode::MalformedTrace,
                "trace '" + current->trace_id + "' not closed with 'end'");
  }
  if (traces.empty()) {
    throw Error(ErrorCode::EmptyFile, "no trace records found");
  }
  return traces;
}

std::vector<StaticTrace> parse_static_traces(const std::filesystem::path& file) {
  return parse_static_traces_text(util::read_file(file));
}

std::string serialize_static_traces(const std::vector<StaticTrace>& traces) {
  std::ostringstream out;
  for (const auto& t : traces) {
    out << "trace " << t.trace_id << "\n";
    for (const auto& s : t.steps) {
      out << "  step " << step_kind_name(s.kind) << " "
          << (s.location.class_fqn.empty() ? "-" : s.location.class_fqn) << "#"
          << s.location.method << " " << s.location.file;
      if (s.location.line) out << ":" << *s.location.line;
      out << "\n";
      if (s.snippet) out << "    snippet " << *s.snippet << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

std::string format_trace_for_prompt(const StaticTrace& trace) {
  std::ostringstream out;
  out << "Trace " << trace.trace_id << " (" << trace.steps.size()
      << " steps, source -> sink):\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const char* label = s.kind == StepKind::Source ? "SOURCE"
                        : s.kind == StepKind::Sink ? "SINK"
                                                   : "STEP";
    out << "  " << (i + 1) << ". [" << label << "] " << s.location.file;
    if (s.location.line) out << ":" << *s.location.line;
    out << "  ";
    if (!s.location.class_fqn.empty()) out << s.location.class_fqn << ".";
    out << s.location.method << "\n";
    if (s.snippet) out << "     code: " << *s.snippet << "\n";
  }
  return out.str();
}

std::vector<std::string> location_tokens(const CodeLocation& loc) {
  std::vector<std::string> tokens;
  std::filesystem::path p(loc.file);
  std::string stem = p.stem().string();
  if (!stem.empty()) tokens.push_back(util::to_lower(stem));
  for (const auto& seg : util::split(loc.class_fqn, '.')) {
    if (!seg.empty()) tokens.push_back(util::to_lower(seg));
  }
  if (!loc.method.empty()) tokens.push_back(util::to_lower(loc.method));
  return tokens;
}

namespace {

int token_overlap(const CodeLocation& a, const CodeLocation& b) {
  auto ta = location_tokens(a);
  auto tb = location_tokens(b);
  std::set<std::string> sa(ta.begin(), ta.end());
  std::set<std::string> sb(tb.begin(), tb.end());
  int n = 0;
  for (const auto& t : sa) {
    if (sb.count(t)) ++n;
  }
  return n;
}

}  // namespace

int similarity_score(const StaticTrace& trace, const std::vector<CodeLocation>& hints) {
  int best = 0;
  for (const auto& h : hints) {
    for (const auto& s : trace.steps) {
      best = std::max(best, token_overlap(h, s.location));
    }
  }
  return best;
}

std::vector<StaticTrace> rank_traces(const std::vector<StaticTrace>& traces,
                                     const std::vector<CodeLocation>& hints,
                                     int k) {
  if (k < 1) {
    throw Error(ErrorCode::Internal, "rank_traces called with k < 1");
  }
  std::vector<std::size_t> order(traces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (!hints.empty()) {
    std::vector<int> score(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) {
      score[i] = similarity_score(traces[i], hints);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  }
  std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(k), traces.size());
  std::vector<StaticTrace> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(traces[order[i]]);
  return out;
}

namespace {

// Parses one "EVT ..." line body (after the prefix). Returns nullopt when
// the body does not satisfy the grammar.
std::optional<CodeLocation> parse_event_body(const std::string& body) {
  auto f = fields(body, 2);
  if (f.size() != 2) return std::nullopt;
  auto dot = f[0].rfind('.');
  if (dot == std::string::npos) return std::nullopt;
  CodeLocation loc;
  loc.class_fqn = f[0].substr(0, dot);
  loc.method = f[0].substr(dot + 1);
  if (loc.method.empty()) return std::nullopt;
  if (f[1].find_first_of(" \t") != std::string::npos) return std::nullopt;
  auto [file, ln] = split_file_line(f[1]);
  if (file.empty()) return std::nullopt;
  loc.file = file;
  loc.line = ln;
  return loc;
}

}  // namespace

DynamicTrace parse_dynamic_log(const std::string& log_text, bool strict) {
  DynamicTrace dyn;
  std::istringstream in(log_text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = util::trim(raw);
    if (!util::starts_with(line, "EVT ")) continue;
    auto loc = parse_event_body(util::trim(line.substr(4)));
    if (!loc) {
      if (strict) {
        throw Error(ErrorCode::MalformedEvent,
                    "line " + std::to_string(line_no) + ": bad event line '" + line + "'");
      }
      continue;
    }
    ExecutionEvent ev;
    ev.location = std::move(*loc);
    ev.sequence = static_cast<int>(dyn.events.size());
    dyn.events.push_back(std::move(ev));
  }
  return dyn;
}

std::string serialize_dynamic_trace(const DynamicTrace& dyn) {
  std::ostringstream out;
  for (const auto& ev : dyn.events) {
    out << "EVT " << ev.location.class_fqn << "." << ev.location.method << " "
        << ev.location.file;
    if (ev.location.line) out << ":" << *ev.location.line;
    out << "\n";
  }
  return out.str();
}

namespace {

std::string normalize_file(const std::string& file) {
  std::string norm = std::filesystem::path(file).lexically_normal().generic_string();
  if (util::starts_with(norm, "./")) norm = norm.substr(2);
  return norm;
}

}  // namespace

bool match_location(const CodeLocation& step_loc, const CodeLocation& event_loc) {
  if (step_loc.method != event_loc.method) return false;
  if (!step_loc.class_fqn.empty() && !event_loc.class_fqn.empty()) {
    return step_loc.class_fqn == event_loc.class_fqn;
  }
  return normalize_file(step_loc.file) == normalize_file(event_loc.file);
}

CoverageSummary coverage_summary(const StaticTrace& trace, const DynamicTrace& dyn) {
  CoverageSummary cov;
  cov.steps_total = static_cast<int>(trace.steps.size());
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    bool hit = false;
    for (const auto& ev : dyn.events) {
      if (match_location(trace.steps[i].location, ev.location)) {
        hit = true;
        break;
      }
    }
    if (hit) {
      ++cov.steps_executed;
      if (i == 0) cov.source_hit = true;
      if (i == trace.steps.size() - 1) cov.sink_hit = true;
    }
  }
  cov.coverage = static_cast<double>(cov.steps_executed) / cov.steps_total;
  return cov;
}

bool sink_hit(const StaticTrace& trace, const DynamicTrace& dyn) {
  return coverage_summary(trace, dyn).sink_hit;
}

std::string format_coverage(const CoverageSummary& cov) {
  char pct[32];
  std::snprintf(pct, sizeof(pct), "%.1f", cov.coverage * 100.0);
  std::ostringstream out;
  out << "Trace coverage: " << cov.steps_executed << "/" << cov.steps_total << " steps ("
      << pct << "%), source hit: " << (cov.source_hit ? "yes" : "no")
      << ", sink hit: " << (cov.sink_hit ? "yes" : "no");
  return out.str();
}

LogAdapter parse_log_adapter(const std::string& config_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedConfig, std::string("log adapter: ") + e.what());
  }
  LogAdapter adapter;
  if (!j.contains("rules") || !j["rules"].is_array()) {
    throw Error(ErrorCode::MalformedConfig, "log adapter: missing 'rules' array");
  }
  for (const auto& r : j["rules"]) {
    LogAdapter::Rule rule;
    rule.match = r.at("match").get<std::string>();
    rule.emit = r.at("emit").get<std::string>();
    try {
      std::regex probe(rule.match);  // validate eagerly
    } catch (const std::regex_error& e) {
      throw Error(ErrorCode::MalformedConfig,
                  "log adapter: bad regex '" + rule.match + "': " + e.what());
    }
    adapter.rules.push_back(std::move(rule));
  }
  return adapter;
}

LogAdapter load_log_adapter(const std::filesystem::path& config) {
  return parse_log_adapter(util::read_file(config));
}

std::string apply_log_adapter(const LogAdapter& adapter, const std::string& log_text) {
  std::vector<std::regex> compiled;
  compiled.reserve(adapter.rules.size());
  for (const auto& r : adapter.rules) compiled.emplace_back(r.match);

  std::ostringstream out;
  std::istringstream in(log_text);
  std::string line;
  while (std::getline(in, line)) {
    std::string emitted = line;
    for (std::size_t i = 0; i < adapter.rules.size(); ++i) {
      std::smatch m;
      if (std::regex_match(line, m, compiled[i])) {
        emitted = m.format(adapter.rules[i].emit);
        break;
      }
    }
    out << emitted << "\n";
  }
  return out.str();
}

void to_json(nlohmann::json& j, const TraceStep& s) {
  j = nlohmann::json{{"location", s.location}, {"kind", step_kind_name(s.kind)}};
  if (s.snippet) j["snippet"] = *s.snippet;
}

void from_json(const nlohmann::json& j, TraceStep& s) {
  s.location = j.at("location").get<CodeLocation>();
  s.kind = step_kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("snippet")) {
    s.snippet = j.at("snippet").get<std::string>();
  } else {
    s.snippet.reset();
  }
}

void to_json(nlohmann::json& j, const StaticTrace& t) {
  j = nlohmann::json{{"trace_id", t.trace_id}, {"steps", t.steps}};
}

void from_json(const nlohmann::json& j, StaticTrace& t) {
  t.trace_id = j.at("trace_id").get<std::string>();
  t.steps = j.at("steps").get<std::vector<TraceStep>>();
}

void to_json(nlohmann::json& j, const ExecutionEvent& e) {
  j = nlohmann::json{{"location", e.location}, {"sequence", e.sequence}};
}

void from_json(const nlohmann::json& j, ExecutionEvent& e) {
  e.location = j.at("location").get<CodeLocation>();
  e.sequence = j.at("sequence").get<int>();
}

void to_json(nlohmann::json& j, const DynamicTrace& d) {
  j = nlohmann::json{{"events", d.events}};
}

void from_json(const nlohmann::json& j, DynamicTrace& d) {
  d.events = j.at("events").get<std::vector<ExecutionEvent>>();
}

void to_json(nlohmann::json& j, const CoverageSummary& c) {
  j = nlohmann::json{{"source_hit", c.source_hit},
                     {"sink_hit", c.sink_hit},
                     {"steps_executed", c.steps_executed},
                     {"steps_total", c.steps_total},
                     {"coverage", c.coverage}};
}

void from_json(const nlohmann::json& j, CoverageSummary& c) {
  c.source_hit = j.at("source_hit").get<bool>();
  c.sink_hit = j.at("sink_hit").get<bool>();
  c.steps_executed = j.at("steps_executed").get<int>();
  c.steps_total = j.at("steps_total").get<int>();
  c.coverage = j.at("coverage").get<double>();
}

}  // namespace poch::trace
