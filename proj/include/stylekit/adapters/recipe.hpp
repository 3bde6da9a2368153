// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace stylekit::adapters {

struct RecipePaths {
  std::string train_data;
  std::string valid_data;
};

// Finetuning hyperparameters for an external trainer. Defaults:
//   learning_rate 5e-5, num_epoch 3, per_gpu_batch_size 4,
//   input_max_token_length 256, generation_max_length 256.
// `overrides` is an object over those keys; each supplied key is listed in
// "overridden" (in the order above). Unknown keys or non-numeric values
// throw Error(kInvalidConfig).
nlohmann::ordered_json emit_training_recipe(
    const std::string& author_id, const RecipePaths& paths,
    const nlohmann::json& overrides = nlohmann::json::object());

}  // namespace stylekit::adapters
