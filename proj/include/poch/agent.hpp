// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poch/instance.hpp"
#include "poch/prompt.hpp"
#include "poch/run_config.hpp"
#include "poch/trace.hpp"

namespace poch::agent {

struct AgentRequest {
  prompt::PromptBundle prompt;
  int attempt_index = 0;
  std::string session_id;
};

// One PoC candidate as returned by a backend. source_text is the exact
// artifact handed to the runner.
struct PocCandidate {
  std::string source_text;
  std::optional<std::string> declared_entry;
  std::map<std::string, std::string> agent_metadata;
};

// Raw backend reply before source extraction.
struct AgentReply {
  std::string text;
  std::int64_t latency_ms = 0;
  std::map<std::string, std::string> metadata;
};

// Append-only JSONL log of agent traffic: prompt digests, latency and
// token counts. Credentials are never written here.
class SessionLog {
 public:
  explicit SessionLog(std::filesystem::path path) : path_(std::move(path)) {}
  void record(const nlohmann::json& entry) const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

class AgentBackend {
 public:
  virtual ~AgentBackend() = default;
  virtual AgentReply complete(const AgentRequest& req) = 0;
  virtual const char* kind_name() const = 0;
};

// Replays canned responses from <script_dir>/<session_id>/attempt_<n>.txt.
// Deterministic by construction; missing fixtures raise FixtureMissing.
class ScriptedBackend : public AgentBackend {
 public:
  explicit ScriptedBackend(std::filesystem::path script_dir);
  AgentReply complete(const AgentRequest& req) override;
  const char* kind_name() const override { return "scripted"; }

 private:
  std::filesystem::path script_dir_;
};

// Minimal chat-completion-style HTTP backend. Single user message per
// request; the credential is read from the named environment variable and
// sent as a bearer token. Transport errors are retried (bounded,
// exponential backoff); content errors never are.
class RemoteBackend : public AgentBackend {
 public:
  RemoteBackend(std::string endpoint, std::optional<std::string> model_name,
                std::optional<std::string> credential_env, int max_attempts = 3);
  AgentReply complete(const AgentRequest& req) override;
  const char* kind_name() const override { return "remote"; }

 private:
  std::string endpoint_;
  std::optional<std::string> model_name_;
  std::optional<std::string> credential_env_;
  int max_attempts_;
};

// Instantiates a backend from its descriptor. For scripted backends the
// script directory must exist.
std::unique_ptr<AgentBackend> make_backend(const model::AgentBackendDescriptor& descriptor);

// Extracts a single source file from an agent reply: the last fenced code
// block wins; a reply without fences is taken whole. Empty extraction
// raises MalformedResponse.
std::string extract_source(const std::string& reply_text);

// Scans Java-ish source for the first declared class name, used to name
// the PoC file.
std::optional<std::string> sniff_entry_name(const std::string& source_text);

PocCandidate generate_candidate(AgentBackend& backend, const AgentRequest& req,
                                const SessionLog* log = nullptr);

struct TraceRanking {
  std::vector<std::string> trace_ids;  // permutation of the input ids
  bool used_fallback = false;          // agent output was unusable
};

// Agent-assisted trace ranking. Malformed agent output falls back to the
// deterministic ranker's order and flags it. A single-trace input
// short-circuits without contacting the backend.
TraceRanking rank_traces_via_agent(AgentBackend& backend,
                                   const model::ProblemInstance& instance,
                                   const std::vector<trace::StaticTrace>& traces,
                                   const prompt::PromptOptions& options = {},
                                   const SessionLog* log = nullptr);

// CVE guidance with a disk cache keyed by (instance id, prompt digest);
// cache hits never contact the backend.
std::string generate_cve_guidance(AgentBackend& backend,
                                  const model::ProblemInstance& instance,
                                  const std::filesystem::path& cache_dir,
                                  const prompt::PromptOptions& options = {},
                                  const SessionLog* log = nullptr);

// Pure cache probe used by runs that must stay offline.
std::optional<std::string> cached_cve_guidance(const model::ProblemInstance& instance,
                                               const std::filesystem::path& cache_dir,
                                               const prompt::PromptOptions& options = {});

}  // namespace poch::agent
