// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace poch {

// A method-granular code location. class_fqn may be empty when the
// producing adapter could not recover it; matching then degrades to
// file + method.
struct CodeLocation {
  std::string file;
  std::string class_fqn;
  std::string method;
  std::optional<int> line;

  bool operator==(const CodeLocation&) const = default;
};

// "com.demo.Db.execute (src/Db.java:42)" — for prompts, feedback and logs.
std::string display(const CodeLocation& loc);

void to_json(nlohmann::json& j, const CodeLocation& loc);
void from_json(const nlohmann::json& j, CodeLocation& loc);

}  // namespace poch
