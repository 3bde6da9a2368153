// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/adapters/lora.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "stylekit/metrics/report.hpp"

namespace stylekit::adapters {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string target_of(const std::string& stem, const NamingConvention& naming) {
  if (!naming.prefix.empty() && stem.size() > naming.prefix.size() &&
      stem.starts_with(naming.prefix) && stem[naming.prefix.size()] == '.') {
    return stem.substr(naming.prefix.size() + 1);
  }
  return stem;
}

}  // namespace

AdapterConfig adapter_config_from_json(const nlohmann::json& j) {
  AdapterConfig config;
  try {
    config.r = j.at("r").get<int>();
    config.lora_alpha = j.at("lora_alpha").get<double>();
    config.base_model_tag = j.value("base_model_tag", std::string());
    if (j.contains("target_modules")) {
      config.target_modules =
          j.at("target_modules").get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig,
                fmt::format("adapter config: {}", e.what()));
  }
  return config;
}

AdapterConfig read_adapter_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return adapter_config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, fmt::format("{}: {}", path, e.what()));
  }
}

LoraAdapter<float> load_adapter(const TensorFile& file,
                                const AdapterConfig& config,
                                const NamingConvention& naming) {
  if (config.r < 1) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("rank must be positive, got {}", config.r));
  }
  if (!(config.lora_alpha > 0.0) || !std::isfinite(config.lora_alpha)) {
    throw Error(ErrorCode::kInvalidConfig,
                fmt::format("lora_alpha must be positive, got {}",
                            config.lora_alpha));
  }
  LoraAdapter<float> adapter;
  adapter.rank = config.r;
  adapter.alpha = config.lora_alpha;
  adapter.base_model_tag = config.base_model_tag;

  std::map<std::string, const Tensor*> a_parts, b_parts;
  std::set<Dtype> dtypes;
  for (const auto& [name, tensor] : file.tensors()) {
    if (ends_with(name, naming.a_suffix)) {
      a_parts[name.substr(0, name.size() - naming.a_suffix.size())] = &tensor;
    } else if (ends_with(name, naming.b_suffix)) {
      b_parts[name.substr(0, name.size() - naming.b_suffix.size())] = &tensor;
    } else {
      adapter.extra.emplace(name, tensor);
    }
  }
  for (const auto& [stem, t] : a_parts) {
    if (!b_parts.contains(stem)) {
      throw Error(ErrorCode::kUnpairedTensor,
                  fmt::format("{}: lora_A without lora_B",
                              target_of(stem, naming)));
    }
  }
  for (const auto& [stem, t] : b_parts) {
    if (!a_parts.contains(stem)) {
      throw Error(ErrorCode::kUnpairedTensor,
                  fmt::format("{}: lora_B without lora_A",
                              target_of(stem, naming)));
    }
  }

  for (const auto& [stem, a_tensor] : a_parts) {
    const Tensor& b_tensor = *b_parts.at(stem);
    const std::string target = target_of(stem, naming);
    if (a_tensor->shape.size() != 2 || b_tensor.shape.size() != 2) {
      throw Error(ErrorCode::kShapeMismatch,
                  fmt::format("{}: lora tensors must be 2-D", target));
    }
    if (a_tensor->shape[0] != config.r || b_tensor.shape[1] != config.r) {
      throw Error(ErrorCode::kShapeMismatch,
                  fmt::format("{}: A is {}x{}, B is {}x{}, rank is {}", target,
                              a_tensor->shape[0], a_tensor->shape[1],
                              b_tensor.shape[0], b_tensor.shape[1], config.r));
    }
    LoraPair<float> pair{a_tensor->to_matrix(), b_tensor.to_matrix()};
    if (!pair.a.allFinite() || !pair.b.allFinite()) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("{}: non-finite weights", target));
    }
    if (adapter.modules.contains(target)) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("target '{}' appears twice", target));
    }
    dtypes.insert(a_tensor->dtype);
    dtypes.insert(b_tensor.dtype);
    adapter.modules.emplace(target, std::move(pair));
    adapter.stems.emplace(target, stem);
  }
  // A configured name matches a target equal to it or ending in ".<name>".
  for (const auto& wanted : config.target_modules) {
    const bool found = std::any_of(
        adapter.modules.begin(), adapter.modules.end(), [&](const auto& m) {
          return m.first == wanted || ends_with(m.first, "." + wanted);
        });
    if (!found) {
      const std::string& target = wanted;
      throw Error(ErrorCode::kInvalidConfig,
                  fmt::format("configured target '{}' not in file", target));
    }
  }
  if (!dtypes.empty()) {
    adapter.storage_dtype = *dtypes.begin();
    for (const Dtype d : dtypes) {
      adapter.storage_dtype = widest(adapter.storage_dtype, d);
    }
  }
  return adapter;
}

TensorFile save_adapter(const LoraAdapter<float>& adapter,
                        const std::map<std::string, std::string>& metadata,
                        const NamingConvention& naming) {
  TensorFile file;
  for (const auto& [name, tensor] : adapter.extra) file.insert(name, tensor);
  for (const auto& [target, pair] : adapter.modules) {
    std::string stem;
    if (const auto it = adapter.stems.find(target); it != adapter.stems.end()) {
      stem = it->second;
    } else if (naming.prefix.empty()) {
      stem = target;
    } else {
      stem = naming.prefix + "." + target;
    }
    file.insert(stem + naming.a_suffix,
                make_tensor(pair.a, adapter.storage_dtype));
    file.insert(stem + naming.b_suffix,
                make_tensor(pair.b, adapter.storage_dtype));
  }
  for (const auto& [k, v] : metadata) file.set_metadata(k, v);
  return file;
}

std::string format_ratios(std::span<const double> ratios) {
  std::string out;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (i > 0) out += ':';
    out += metrics::format_real(ratios[i]);
  }
  return out;
}

}  // namespace stylekit::adapters
