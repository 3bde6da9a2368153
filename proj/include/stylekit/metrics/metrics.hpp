// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fmt/core.h>

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "stylekit/error.hpp"

namespace stylekit::metrics {

namespace detail {

template <typename A, typename B>
void require_same_size(const Eigen::MatrixBase<A>& a,
                       const Eigen::MatrixBase<B>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("lengths {} and {} differ", a.size(), b.size()));
  }
  if (a.size() == 0) throw Error(ErrorCode::kEmptyInput, "empty vectors");
}

// Validates a distribution and returns it scaled to unit mass. Mass within
// 1e-6 of one is accepted and renormalized.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> checked_distribution(
    const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i)) || p(i) < Scalar(0)) {
      throw Error(ErrorCode::kInvalidDistribution,
                  fmt::format("component {} is {}", i,
                              static_cast<double>(p(i))));
    }
  }
  const Scalar mass = p.sum();
  if (std::abs(mass - Scalar(1)) > Scalar(1e-6)) {
    throw Error(ErrorCode::kInvalidDistribution,
                fmt::format("mass {} is not 1", static_cast<double>(mass)));
  }
  return p / mass;
}

}  // namespace detail

// Mean of squared componentwise differences.
template <typename A, typename B>
typename A::Scalar mse(const Eigen::MatrixBase<A>& a,
                       const Eigen::MatrixBase<B>& b) {
  detail::require_same_size(a, b);
  return (a - b).squaredNorm() / static_cast<typename A::Scalar>(a.size());
}

// Jensen-Shannon divergence with base-2 logarithms, so 0 <= JSD <= 1.
// Terms with zero probability contribute nothing.
template <typename A, typename B>
typename A::Scalar jsd(const Eigen::MatrixBase<A>& p_in,
                       const Eigen::MatrixBase<B>& q_in) {
  using Scalar = typename A::Scalar;
  detail::require_same_size(p_in, q_in);
  const auto p = detail::checked_distribution(p_in);
  const auto q = detail::checked_distribution(q_in);
  auto kl_to_mixture = [](const auto& x, const auto& m) {
    Scalar sum(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) > Scalar(0)) sum += x(i) * std::log2(x(i) / m(i));
    }
    return sum;
  };
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> m = (p + q) / Scalar(2);
  const Scalar d = (kl_to_mixture(p, m) + kl_to_mixture(q, m)) / Scalar(2);
  return std::clamp(d, Scalar(0), Scalar(1));
}

template <typename A, typename B>
typename A::Scalar cosine(const Eigen::MatrixBase<A>& u,
                          const Eigen::MatrixBase<B>& v) {
  using Scalar = typename A::Scalar;
  detail::require_same_size(u, v);
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (nu == Scalar(0) || nv == Scalar(0)) {
    throw Error(ErrorCode::kZeroVector, "cosine of a zero vector");
  }
  return std::clamp(u.dot(v) / (nu * nv), Scalar(-1), Scalar(1));
}

// Componentwise mean of equally sized vectors.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> average_embedding(
    std::span<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::kEmptyInput, "no embeddings");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sum =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(vectors.front().size());
  for (const auto& v : vectors) {
    if (v.size() != sum.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  fmt::format("embedding of size {} among size {}", v.size(),
                              sum.size()));
    }
    sum += v;
  }
  return sum / static_cast<Scalar>(vectors.size());
}

// exp(mean NLL), NLLs in nats.
inline double perplexity(std::span<const double> nlls) {
  if (nlls.empty()) throw Error(ErrorCode::kEmptyInput, "no token NLLs");
  double sum = 0;
  for (const double x : nlls) {
    if (!std::isfinite(x) || x < 0) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("NLL {} is not finite and non-negative", x));
    }
    sum += x;
  }
  return std::exp(sum / static_cast<double>(nlls.size()));
}

// Percentage reduction from `pre` to `post`.
inline double ppl_reduction(double pre, double post) {
  if (!(pre > 0) || !std::isfinite(pre) || !std::isfinite(post)) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("perplexity before finetuning must be positive, "
                            "got {}",
                            pre));
  }
  return 100.0 * (pre - post) / pre;
}

struct ClassificationStats {
  double accuracy = 0;
  std::vector<std::string> labels;
  Eigen::MatrixXi confusion;  // rows: gold, columns: predicted
};

// Accuracy and confusion matrix over the given label order. Throws
// Error(kLengthMismatch) for unequal or empty inputs and
// Error(kUnknownAuthor) for labels outside `labels`.
ClassificationStats classification_stats(std::span<const std::string> gold,
                                         std::span<const std::string> predicted,
                                         std::vector<std::string> labels);

}  // namespace stylekit::metrics
