// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/adapters/safetensors.hpp"

#include <fmt/core.h>

#include <Eigen/Core>
#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>

#include "stylekit/error.hpp"

namespace stylekit::adapters {

static_assert(std::endian::native == std::endian::little,
              "tensor payloads are copied as little-endian");

namespace {

std::uint16_t load_u16(const std::byte* p) {
  std::uint16_t v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

Dtype parse_dtype(const std::string& name) {
  if (name == "F32") return Dtype::kF32;
  if (name == "F16") return Dtype::kF16;
  if (name == "BF16") return Dtype::kBF16;
  throw Error(ErrorCode::kUnsupportedDtype,
              fmt::format("dtype '{}' is not supported (F32, F16, BF16)", name));
}

std::uint64_t product(const std::vector<std::int64_t>& shape) {
  std::uint64_t n = 1;
  for (const auto d : shape) {
    const auto ud = static_cast<std::uint64_t>(d);
    if (ud != 0 && n > std::numeric_limits<std::uint64_t>::max() / ud) {
      throw Error(ErrorCode::kCorruptHeader, "shape overflows");
    }
    n *= ud;
  }
  return n;
}

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorCode::kCorruptHeader, what);
}

}  // namespace

std::string_view to_string(Dtype dtype) {
  switch (dtype) {
    case Dtype::kF32: return "F32";
    case Dtype::kF16: return "F16";
    case Dtype::kBF16: return "BF16";
  }
  return "F32";
}

std::size_t dtype_size(Dtype dtype) { return dtype == Dtype::kF32 ? 4 : 2; }

Dtype widest(Dtype a, Dtype b) { return a == b ? a : Dtype::kF32; }

std::int64_t Tensor::numel() const {
  return static_cast<std::int64_t>(product(shape));
}

std::vector<float> Tensor::to_floats() const {
  const auto raw = bytes();
  const std::size_t n = raw.size() / dtype_size(dtype);
  std::vector<float> out(n);
  switch (dtype) {
    case Dtype::kF32:
      std::memcpy(out.data(), raw.data(), n * sizeof(float));
      break;
    case Dtype::kF16:
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<float>(
            Eigen::numext::bit_cast<Eigen::half>(load_u16(raw.data() + 2 * i)));
      }
      break;
    case Dtype::kBF16:
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<float>(Eigen::numext::bit_cast<Eigen::bfloat16>(
            load_u16(raw.data() + 2 * i)));
      }
      break;
  }
  return out;
}

Eigen::MatrixXf Tensor::to_matrix() const {
  Eigen::Index rows = 1, cols = 1;
  if (shape.size() == 2) {
    rows = shape[0];
    cols = shape[1];
  } else if (shape.size() == 1) {
    rows = shape[0];
  } else if (!shape.empty()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("tensor of rank {} is not a matrix", shape.size()));
  }
  const auto values = to_floats();
  return Eigen::Map<const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(values.data(), rows,
                                                          cols);
}

Tensor make_tensor(Dtype dtype, std::vector<std::int64_t> shape, Bytes data) {
  for (const auto d : shape) {
    if (d < 0) throw Error(ErrorCode::kShapeMismatch, "negative dimension");
  }
  if (product(shape) * dtype_size(dtype) != data.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("{} bytes do not match shape for {}", data.size(),
                            to_string(dtype)));
  }
  Tensor t;
  t.dtype = dtype;
  t.shape = std::move(shape);
  t.length = data.size();
  t.storage = std::make_shared<const Bytes>(std::move(data));
  return t;
}

Tensor make_tensor(const Eigen::MatrixXf& values, Dtype dtype) {
  const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      row_major = values;
  const auto n = static_cast<std::size_t>(row_major.size());
  Bytes data(n * dtype_size(dtype));
  for (std::size_t i = 0; i < n; ++i) {
    const float v = row_major.data()[i];
    switch (dtype) {
      case Dtype::kF32:
        std::memcpy(data.data() + 4 * i, &v, 4);
        break;
      case Dtype::kF16: {
        const auto bits =
            Eigen::numext::bit_cast<std::uint16_t>(Eigen::half(v));
        std::memcpy(data.data() + 2 * i, &bits, 2);
        break;
      }
      case Dtype::kBF16: {
        const auto bits =
            Eigen::numext::bit_cast<std::uint16_t>(Eigen::bfloat16(v));
        std::memcpy(data.data() + 2 * i, &bits, 2);
        break;
      }
    }
  }
  return make_tensor(dtype, {values.rows(), values.cols()}, std::move(data));
}

bool same_contents(const Tensor& a, const Tensor& b) {
  const auto x = a.bytes();
  const auto y = b.bytes();
  return a.dtype == b.dtype && a.shape == b.shape &&
         std::equal(x.begin(), x.end(), y.begin(), y.end());
}

Bytes to_bytes(std::string_view s) {
  Bytes out(s.size());
  std::memcpy(out.data(), s.data(), s.size());
  return out;
}

TensorFile TensorFile::read(std::span<const std::byte> bytes) {
  return read(std::make_shared<const Bytes>(bytes.begin(), bytes.end()));
}

TensorFile TensorFile::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  return read(std::make_shared<const Bytes>(to_bytes(text)));
}

TensorFile TensorFile::read(std::shared_ptr<const Bytes> buffer) {
  const Bytes& raw = *buffer;
  if (raw.size() < 8) {
    throw Error(ErrorCode::kTruncated,
                fmt::format("{} bytes, need at least 8", raw.size()));
  }
  std::uint64_t header_len = 0;
  for (int i = 7; i >= 0; --i) {
    header_len = (header_len << 8) | std::to_integer<std::uint64_t>(raw[i]);
  }
  if (header_len > raw.size() - 8) {
    throw Error(ErrorCode::kTruncated,
                fmt::format("header length {} exceeds {} available bytes",
                            header_len, raw.size() - 8));
  }
  const auto* header_begin = reinterpret_cast<const char*>(raw.data() + 8);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_begin, header_begin + header_len);
  } catch (const nlohmann::json::exception& e) {
    corrupt(fmt::format("header is not JSON: {}", e.what()));
  }
  if (!header.is_object()) corrupt("header is not a JSON object");

  const std::size_t payload_begin = 8 + header_len;
  const std::size_t payload_size = raw.size() - payload_begin;

  TensorFile file;
  struct Extent {
    std::uint64_t begin, end;
    std::string name;
  };
  std::vector<Extent> extents;
  for (const auto& [name, entry] : header.items()) {
    if (name == "__metadata__") {
      if (!entry.is_object()) corrupt("__metadata__ is not an object");
      for (const auto& [k, v] : entry.items()) {
        if (!v.is_string()) corrupt("__metadata__ values must be strings");
        file.metadata_[k] = v.get<std::string>();
      }
      continue;
    }
    if (!entry.is_object() || !entry.contains("dtype") ||
        !entry.contains("shape") || !entry.contains("data_offsets")) {
      corrupt(fmt::format("tensor '{}' lacks dtype/shape/data_offsets", name));
    }
    if (!entry["dtype"].is_string()) corrupt("dtype is not a string");
    const Dtype dtype = parse_dtype(entry["dtype"].get<std::string>());

    const auto& shape_json = entry["shape"];
    const auto& offsets = entry["data_offsets"];
    if (!shape_json.is_array() || !offsets.is_array() || offsets.size() != 2) {
      corrupt(fmt::format("tensor '{}' has a malformed shape or offsets", name));
    }
    std::vector<std::int64_t> shape;
    for (const auto& d : shape_json) {
      if (!d.is_number_unsigned()) {
        corrupt(fmt::format("tensor '{}' has a bad dimension", name));
      }
      shape.push_back(d.get<std::int64_t>());
    }
    if (!offsets[0].is_number_unsigned() || !offsets[1].is_number_unsigned()) {
      corrupt(fmt::format("tensor '{}' has non-integer offsets", name));
    }
    const auto begin = offsets[0].get<std::uint64_t>();
    const auto end = offsets[1].get<std::uint64_t>();
    if (begin > end || end > payload_size) {
      corrupt(fmt::format("tensor '{}' offsets [{},{}] outside payload of {} "
                          "bytes",
                          name, begin, end, payload_size));
    }
    if (end - begin != product(shape) * dtype_size(dtype)) {
      corrupt(fmt::format("tensor '{}' spans {} bytes but its shape needs {}",
                          name, end - begin, product(shape) * dtype_size(dtype)));
    }
    Tensor t;
    t.dtype = dtype;
    t.shape = std::move(shape);
    t.storage = buffer;
    t.offset = payload_begin + begin;
    t.length = end - begin;
    file.tensors_.emplace(name, std::move(t));
    extents.push_back({begin, end, name});
  }

  std::sort(extents.begin(), extents.end(), [](const auto& a, const auto& b) {
    return std::tie(a.begin, a.end) < std::tie(b.begin, b.end);
  });
  std::uint64_t cursor = 0;
  for (const auto& e : extents) {
    if (e.begin != cursor) {
      corrupt(fmt::format("tensor '{}' at offset {} overlaps or leaves a gap "
                          "(expected {})",
                          e.name, e.begin, cursor));
    }
    cursor = e.end;
  }
  if (cursor != payload_size) {
    corrupt(fmt::format("tensors cover {} of {} payload bytes", cursor,
                        payload_size));
  }
  return file;
}

Bytes TensorFile::write() const {
  // Top-level keys sorted; fields inside an entry in the usual order.
  std::map<std::string, nlohmann::ordered_json> entries;
  std::uint64_t cursor = 0;
  for (const auto& [name, t] : tensors_) {
    if (t.numel() * static_cast<std::int64_t>(dtype_size(t.dtype)) !=
        static_cast<std::int64_t>(t.length)) {
      corrupt(fmt::format("tensor '{}' byte length disagrees with its shape",
                          name));
    }
    nlohmann::ordered_json entry;
    entry["dtype"] = std::string(to_string(t.dtype));
    entry["shape"] = t.shape;
    entry["data_offsets"] = {cursor, cursor + t.length};
    entries.emplace(name, std::move(entry));
    cursor += t.length;
  }
  if (!metadata_.empty()) entries.emplace("__metadata__", metadata_);
  nlohmann::ordered_json header = nlohmann::ordered_json::object();
  for (auto& [key, value] : entries) header[key] = std::move(value);

  const std::string text = header.dump();
  Bytes out;
  out.reserve(8 + text.size() + cursor);
  const std::uint64_t n = text.size();
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::byte>((n >> (8 * i)) & 0xFF));
  }
  const auto header_bytes = to_bytes(text);
  out.insert(out.end(), header_bytes.begin(), header_bytes.end());
  for (const auto& [name, t] : tensors_) {
    const auto b = t.bytes();
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

const Tensor& TensorFile::at(const std::string& name) const {
  const auto it = tensors_.find(name);
  if (it == tensors_.end()) {
    throw Error(ErrorCode::kUnknownTarget,
                fmt::format("no tensor named '{}'", name));
  }
  return it->second;
}

void TensorFile::insert(std::string name, Tensor tensor) {
  if (name == "__metadata__") {
    throw Error(ErrorCode::kInvalidInput, "'__metadata__' is reserved");
  }
  tensors_.insert_or_assign(std::move(name), std::move(tensor));
}

void TensorFile::set_metadata(std::string key, std::string value) {
  metadata_.insert_or_assign(std::move(key), std::move(value));
}

bool operator==(const TensorFile& a, const TensorFile& b) {
  if (a.metadata_ != b.metadata_ || a.tensors_.size() != b.tensors_.size()) {
    return false;
  }
  auto it = b.tensors_.begin();
  for (const auto& [name, t] : a.tensors_) {
    if (name != it->first || !same_contents(t, it->second)) return false;
    ++it;
  }
  return true;
}

}  // namespace stylekit::adapters
