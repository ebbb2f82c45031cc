// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace poch {

// One code per error family surfaced by the harness. The C API maps these
// onto poch_status values; the CLI maps them onto sysexits-style codes.
enum class ErrorCode {
  // manifests / configs
  MissingField,
  MalformedManifest,
  DanglingReference,
  MalformedConfig,
  // static traces / dynamic logs
  MalformedTrace,
  EmptyFile,
  InvariantViolation,
  MalformedEvent,
  // prompt construction
  MissingContext,
  EmptyTraceSet,
  CriteriaMismatch,
  TemplateError,
  // agent backends
  BackendUnavailable,
  MalformedResponse,
  FixtureMissing,
  // execution
  WorkspaceError,
  CommandSpawnError,
  MissingPlaceholder,
  // validation loop / reporting
  CalledOnValidVerdict,
  EpisodeNotSuccessful,
  NoGroundTruth,
  UnknownEpisode,
  UnknownCategory,
  // catch-alls
  IoError,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace poch
