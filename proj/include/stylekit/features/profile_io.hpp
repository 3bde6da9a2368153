// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "stylekit/features/features.hpp"

namespace stylekit::features {

// {"label", "n_sentences", "lexical": [6], "syntactic": [5], "surface": [5]}
nlohmann::ordered_json to_json(const StyleProfile& profile);
StyleProfile profile_from_json(const nlohmann::json& j);

// One profile per line.
std::vector<StyleProfile> read_profiles(const std::string& path);
std::string profiles_to_jsonl(const std::vector<StyleProfile>& profiles);

}  // namespace stylekit::features
