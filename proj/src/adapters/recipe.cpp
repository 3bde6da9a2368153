// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/adapters/recipe.hpp"

#include <fmt/core.h>

#include <array>
#include <string_view>

#include "stylekit/error.hpp"

namespace stylekit::adapters {

namespace {

struct Default {
  std::string_view key;
  double value;
  bool integral;
};

constexpr std::array<Default, 5> kDefaults{{
    {"learning_rate", 5e-5, false},
    {"num_epoch", 3, true},
    {"per_gpu_batch_size", 4, true},
    {"input_max_token_length", 256, true},
    {"generation_max_length", 256, true},
}};

}  // namespace

nlohmann::ordered_json emit_training_recipe(const std::string& author_id,
                                            const RecipePaths& paths,
                                            const nlohmann::json& overrides) {
  if (!overrides.is_null() && !overrides.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "recipe overrides must be an object");
  }
  if (overrides.is_object()) {
    for (const auto& [key, value] : overrides.items()) {
      bool known = false;
      for (const auto& d : kDefaults) known = known || d.key == key;
      if (!known) {
        throw Error(ErrorCode::kInvalidConfig,
                    fmt::format("unknown recipe key '{}'", key));
      }
      if (!value.is_number()) {
        throw Error(ErrorCode::kInvalidConfig,
                    fmt::format("recipe key '{}' must be numeric", key));
      }
    }
  }

  nlohmann::ordered_json recipe;
  recipe["author_id"] = author_id;
  recipe["train_data"] = paths.train_data;
  recipe["valid_data"] = paths.valid_data;
  auto overridden = nlohmann::ordered_json::array();
  for (const auto& d : kDefaults) {
    const std::string key(d.key);
    if (overrides.is_object() && overrides.contains(key)) {
      const auto& v = overrides.at(key);
      if (d.integral) {
        if (!v.is_number_integer()) {
          throw Error(ErrorCode::kInvalidConfig,
                      fmt::format("recipe key '{}' must be an integer", key));
        }
        recipe[key] = v.get<std::int64_t>();
      } else {
        recipe[key] = v.get<double>();
      }
      overridden.push_back(key);
    } else if (d.integral) {
      recipe[key] = static_cast<std::int64_t>(d.value);
    } else {
      recipe[key] = d.value;
    }
  }
  recipe["overridden"] = std::move(overridden);
  return recipe;
}

}  // namespace stylekit::adapters
