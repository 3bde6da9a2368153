// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylekit::adapters {

enum class Dtype { kF32, kF16, kBF16 };

std::string_view to_string(Dtype dtype);
std::size_t dtype_size(Dtype dtype);
// Widest of two storage types: equal types stay, mixed types give F32.
Dtype widest(Dtype a, Dtype b);

using Bytes = std::vector<std::byte>;

// One tensor: a view into shared storage, either the file it was read from
// or a buffer of its own.
struct Tensor {
  Dtype dtype = Dtype::kF32;
  std::vector<std::int64_t> shape;
  std::shared_ptr<const Bytes> storage;
  std::size_t offset = 0;
  std::size_t length = 0;

  std::span<const std::byte> bytes() const {
    return {storage->data() + offset, length};
  }
  std::int64_t numel() const;

  // Values upcast to F32 in row-major order.
  std::vector<float> to_floats() const;
  // 2-D tensors map to rows x cols; 1-D to a column vector.
  Eigen::MatrixXf to_matrix() const;
};

// Encodes F32 values into `dtype` storage (round to nearest even).
Tensor make_tensor(const Eigen::MatrixXf& values, Dtype dtype);
Tensor make_tensor(Dtype dtype, std::vector<std::int64_t> shape, Bytes data);

bool same_contents(const Tensor& a, const Tensor& b);

// A safetensors file: 8-byte little-endian header length, a UTF-8 JSON
// header mapping names to {dtype, shape, data_offsets} (plus an optional
// "__metadata__" string map), then the payload.
class TensorFile {
 public:
  TensorFile() = default;

  // Parses and validates; tensors view `buffer` without copying.
  // Errors: Truncated (short buffer or header), CorruptHeader (bad JSON,
  // offsets out of range, overlapping, not contiguous, or inconsistent with
  // shape), UnsupportedDtype (anything but F32, F16, BF16).
  static TensorFile read(std::shared_ptr<const Bytes> buffer);
  static TensorFile read(std::span<const std::byte> bytes);
  static TensorFile read_file(const std::string& path);

  // Canonical bytes: header keys sorted, no whitespace or padding, payload
  // in name order. write(read(write(x))) == write(x).
  Bytes write() const;

  const std::map<std::string, Tensor>& tensors() const { return tensors_; }
  const std::map<std::string, std::string>& metadata() const {
    return metadata_;
  }
  const Tensor& at(const std::string& name) const;
  bool contains(const std::string& name) const {
    return tensors_.contains(name);
  }

  void insert(std::string name, Tensor tensor);
  void set_metadata(std::string key, std::string value);

  // Same names, dtypes, shapes, bytes and metadata.
  friend bool operator==(const TensorFile& a, const TensorFile& b);

 private:
  std::map<std::string, Tensor> tensors_;
  std::map<std::string, std::string> metadata_;
};

Bytes to_bytes(std::string_view s);

}  // namespace stylekit::adapters
