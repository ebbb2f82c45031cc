// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace poch::assets {

// Text assets from assets/ compiled into the library at build time.
// Names are paths relative to the asset root, e.g. "templates/poc_main.txt".
struct Asset {
  const char* name;
  const char* text;
};

extern const Asset kAssets[];
extern const unsigned kAssetCount;

std::optional<std::string_view> find_asset(std::string_view name);

}  // namespace poch::assets
