// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fmt/core.h>

#include <Eigen/Core>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "stylekit/adapters/safetensors.hpp"
#include "stylekit/error.hpp"

namespace stylekit::adapters {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// A is r x k, B is d x r; the update is (alpha / r) * B * A.
template <typename Scalar>
struct LoraPair {
  Matrix<Scalar> a;
  Matrix<Scalar> b;
};

template <typename Scalar>
struct LoraAdapter {
  std::map<std::string, LoraPair<Scalar>> modules;  // keyed by target
  int rank = 0;
  double alpha = 0.0;
  std::string base_model_tag;
  Dtype storage_dtype = Dtype::kF32;
  // Tensor-name stem each target was read from, reused when writing.
  std::map<std::string, std::string> stems;
  // Tensors outside the naming convention, written back untouched.
  std::map<std::string, Tensor> extra;

  double scaling() const { return alpha / rank; }
};

// Sidecar config: {"r", "lora_alpha", "base_model_tag", "target_modules"}.
struct AdapterConfig {
  int r = 0;
  double lora_alpha = 0.0;
  std::string base_model_tag;
  std::vector<std::string> target_modules;  // empty: accept what is found
};

AdapterConfig adapter_config_from_json(const nlohmann::json& j);
AdapterConfig read_adapter_config(const std::string& path);

// Default layout: "base_model.model.<target>.lora_A.weight". Tensors are
// matched on the suffixes; the prefix is stripped from the target name when
// present.
struct NamingConvention {
  std::string prefix = "base_model.model";
  std::string a_suffix = ".lora_A.weight";
  std::string b_suffix = ".lora_B.weight";
};

// Errors: UnpairedTensor (A without B or the reverse), ShapeMismatch (A not
// r x k, B not d x r, or rank < 1), InvalidConfig (alpha <= 0, non-finite
// entries, listed target missing).
LoraAdapter<float> load_adapter(const TensorFile& file,
                                const AdapterConfig& config,
                                const NamingConvention& naming = {});

// Writes modules in `storage_dtype`, plus the extra tensors and metadata.
TensorFile save_adapter(const LoraAdapter<float>& adapter,
                        const std::map<std::string, std::string>& metadata = {},
                        const NamingConvention& naming = {});

template <typename Scalar>
struct MergeOperand {
  const LoraAdapter<Scalar>* adapter = nullptr;
  double ratio = 1.0;
};

template <typename Scalar>
using MergeSpec = std::vector<MergeOperand<Scalar>>;

// Dense update in double precision.
template <typename Scalar>
Eigen::MatrixXd effective_delta(const LoraAdapter<Scalar>& adapter,
                                const std::string& target) {
  const auto it = adapter.modules.find(target);
  if (it == adapter.modules.end()) {
    throw Error(ErrorCode::kUnknownTarget,
                fmt::format("adapter has no target '{}'", target));
  }
  const Eigen::MatrixXd b = it->second.b.template cast<double>();
  const Eigen::MatrixXd a = it->second.a.template cast<double>();
  return adapter.scaling() * (b * a);
}

// Per target: A' stacks rho_i * (alpha_i / r_i) * A_i vertically, B' puts
// the B_i side by side. The result has rank = alpha = sum r_i, so its own
// scaling is 1 and B'A' = sum rho_i * delta_i.
template <typename Scalar>
LoraAdapter<Scalar> merge(std::span<const MergeOperand<Scalar>> spec) {
  if (spec.empty()) throw Error(ErrorCode::kInvalidSpec, "no operands");
  bool any_positive = false;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double rho = spec[i].ratio;
    if (spec[i].adapter == nullptr) {
      throw Error(ErrorCode::kInvalidSpec, fmt::format("operand {} is null", i));
    }
    if (!std::isfinite(rho) || rho < 0.0) {
      throw Error(ErrorCode::kInvalidSpec,
                  fmt::format("operand {} has ratio {}", i, rho));
    }
    any_positive = any_positive || rho > 0.0;
  }
  if (!any_positive) {
    throw Error(ErrorCode::kInvalidSpec, "all merge ratios are zero");
  }

  const auto& first = *spec.front().adapter;
  for (std::size_t i = 1; i < spec.size(); ++i) {
    const auto& other = *spec[i].adapter;
    if (other.base_model_tag != first.base_model_tag) {
      throw Error(ErrorCode::kIncompatibleAdapters,
                  fmt::format("base model '{}' vs '{}'", first.base_model_tag,
                              other.base_model_tag));
    }
    bool same_targets = other.modules.size() == first.modules.size();
    for (const auto& [target, pair] : first.modules) {
      const auto it = other.modules.find(target);
      if (it == other.modules.end()) {
        same_targets = false;
        break;
      }
      if (it->second.b.rows() != pair.b.rows() ||
          it->second.a.cols() != pair.a.cols()) {
        throw Error(ErrorCode::kIncompatibleAdapters,
                    fmt::format("target '{}' is {}x{} in operand 0 but {}x{} "
                                "in operand {}",
                                target, pair.b.rows(), pair.a.cols(),
                                it->second.b.rows(), it->second.a.cols(), i));
      }
    }
    if (!same_targets) {
      throw Error(ErrorCode::kIncompatibleAdapters,
                  fmt::format("operand {} targets differ from operand 0", i));
    }
  }

  LoraAdapter<Scalar> merged;
  merged.base_model_tag = first.base_model_tag;
  merged.stems = first.stems;
  merged.extra = first.extra;
  merged.storage_dtype = first.storage_dtype;
  int total_rank = 0;
  for (const auto& op : spec) {
    total_rank += op.adapter->rank;
    merged.storage_dtype = widest(merged.storage_dtype, op.adapter->storage_dtype);
  }
  merged.rank = total_rank;
  merged.alpha = total_rank;

  for (const auto& [target, pair] : first.modules) {
    const Eigen::Index d = pair.b.rows();
    const Eigen::Index k = pair.a.cols();
    Matrix<Scalar> a(total_rank, k);
    Matrix<Scalar> b(d, total_rank);
    Eigen::Index row = 0;
    for (const auto& op : spec) {
      const auto& p = op.adapter->modules.at(target);
      const Eigen::Index r = p.a.rows();
      const double factor = op.ratio * op.adapter->scaling();
      a.middleRows(row, r) =
          (p.a.template cast<double>() * factor).template cast<Scalar>();
      b.middleCols(row, r) = p.b;
      row += r;
    }
    merged.modules.emplace(target, LoraPair<Scalar>{std::move(a), std::move(b)});
  }
  return merged;
}

template <typename Scalar>
LoraAdapter<Scalar> merge(const MergeSpec<Scalar>& spec) {
  return merge(std::span<const MergeOperand<Scalar>>(spec));
}

// max over targets of |delta(merged) - sum rho_i * delta_i|, in double.
template <typename Scalar>
double merge_residual(const LoraAdapter<Scalar>& merged,
                      std::span<const MergeOperand<Scalar>> spec) {
  double worst = 0.0;
  for (const auto& [target, pair] : merged.modules) {
    Eigen::MatrixXd expected =
        Eigen::MatrixXd::Zero(pair.b.rows(), pair.a.cols());
    for (const auto& op : spec) {
      expected += op.ratio * effective_delta(*op.adapter, target);
    }
    if (expected.size() == 0) continue;
    worst = std::max(
        worst, (effective_delta(merged, target) - expected).cwiseAbs().maxCoeff());
  }
  return worst;
}

// "0.9:1" for ratios {0.9, 1}.
std::string format_ratios(std::span<const double> ratios);

}  // namespace stylekit::adapters
