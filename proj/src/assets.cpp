// Copyright (c) 2026 The pocharness authors
// SPDX-License-Identifier: Apache-2.0
#include "poch/assets.hpp"

namespace poch::assets {

std::optional<std::string_view> find_asset(std::string_view name) {
  for (unsigned i = 0; i < kAssetCount; ++i) {
    if (name == kAssets[i].name) {
      return std::string_view(kAssets[i].text);
    }
  }
  return std::nullopt;
}

}  // namespace poch::assets
