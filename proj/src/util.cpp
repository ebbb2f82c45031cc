// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#include "poch/util.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "poch/error.hpp"

namespace poch::util {

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &md_len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Internal, "SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(md_len * 2);
  for (unsigned int i = 0; i < md_len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

std::string digest_fields(const std::vector<std::string>& fields) {
  std::string framed;
  for (const auto& f : fields) {
    framed += std::to_string(f.size());
    framed += ':';
    framed += f;
  }
  return sha256_hex(framed);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot read file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write file: " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw Error(ErrorCode::IoError, "short write: " + path.string());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  write_file(tmp, content);
  std::filesystem::rename(tmp, path);
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::size_t replace_all(std::string& text, std::string_view from, std::string_view to) {
  if (from.empty()) return 0;
  std::size_t count = 0;
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
    ++count;
  }
  return count;
}

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string sanitize_for_path(std::string_view id) {
  std::string out;
  out.reserve(id.size());
  for (char c : id) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-') {
      out.push_back(c);
    } else {
      out.push_back('_');
    }
  }
  return out.empty() ? std::string("_") : out;
}

namespace {

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) {
      throw Error(ErrorCode::IoError, "cannot open for locking: " + path.string());
    }
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw Error(ErrorCode::IoError, "cannot lock: " + path.string());
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

void append_line_locked(const std::filesystem::path& path, std::string_view line) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  FileLock lock(path);
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot append to: " + path.string());
  }
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.put('\n');
}

void update_file_locked(const std::filesystem::path& path,
                        const std::function<std::string(const std::string&)>& update) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  auto lock_path = path;
  lock_path += ".lock";
  FileLock lock(lock_path);
  std::string current;
  if (std::filesystem::exists(path)) {
    current = read_file(path);
  }
  write_file_atomic(path, update(current));
}

const char* error_code_name_impl(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::MalformedConfig: return "MalformedConfig";
    case ErrorCode::MalformedTrace: return "MalformedTrace";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::MalformedEvent: return "MalformedEvent";
    case ErrorCode::MissingContext: return "MissingContext";
    case ErrorCode::EmptyTraceSet: return "EmptyTraceSet";
    case ErrorCode::CriteriaMismatch: return "CriteriaMismatch";
    case ErrorCode::TemplateError: return "TemplateError";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::FixtureMissing: return "FixtureMissing";
    case ErrorCode::WorkspaceError: return "WorkspaceError";
    case ErrorCode::CommandSpawnError: return "CommandSpawnError";
    case ErrorCode::MissingPlaceholder: return "MissingPlaceholder";
    case ErrorCode::CalledOnValidVerdict: return "CalledOnValidVerdict";
    case ErrorCode::EpisodeNotSuccessful: return "EpisodeNotSuccessful";
    case ErrorCode::NoGroundTruth: return "NoGroundTruth";
    case ErrorCode::UnknownEpisode: return "UnknownEpisode";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace poch::util

namespace poch {

const char* error_code_name(ErrorCode code) {
  return util::error_code_name_impl(code);
}

}  // namespace poch
