// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poch::util {

// SHA-256 of the input, lowercase hex.
std::string sha256_hex(std::string_view data);

// Digest of a sequence of fields with length framing, so that
// {"ab","c"} and {"a","bc"} hash differently.
std::string digest_fields(const std::vector<std::string>& fields);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Atomic-ish replace: write to a sibling temp file, then rename over.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
bool starts_with(std::string_view s, std::string_view prefix);
std::string to_lower(std::string_view s);

// Replace every occurrence of `from` in `text`. Returns the number of
// occurrences replaced.
std::size_t replace_all(std::string& text, std::string_view from, std::string_view to);

// Milliseconds since the Unix epoch.
std::int64_t now_ms();

// Turns an arbitrary id into something safe to use as a file name:
// [A-Za-z0-9._-] kept, everything else mapped to '_'.
std::string sanitize_for_path(std::string_view id);

// Append one line to a file under an advisory (flock) lock, creating
// parent directories as needed. Used for the append-only logs.
void append_line_locked(const std::filesystem::path& path, std::string_view line);

// Read-modify-write of a whole file under an advisory lock. `update`
// receives the current content ("" when absent) and returns the new one.
void update_file_locked(const std::filesystem::path& path,
                        const std::function<std::string(const std::string&)>& update);

}  // namespace poch::util
