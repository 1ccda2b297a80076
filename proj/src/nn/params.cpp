//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/nn/params.hpp"

#include <bit>
#include <cmath>
#include <cstring>

#include "aisens/error.hpp"
#include "aisens/util/io.hpp"

namespace aisens::nn {

namespace {

constexpr std::string_view kMagic = "AISCKPT1";

void put_u64(std::string &out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i)
    out += static_cast<char>((v >> (8 * i)) & 0xff);
}

void put_f64(std::string &out, double d) {
  put_u64(out, std::bit_cast<std::uint64_t>(d));
}

class Reader {
public:
  explicit Reader(std::string_view b): bytes_(b) { }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + static_cast<std::size_t>(i)]))
        << (8 * i);
    pos_ += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string_view take(std::size_t n) {
    need(n);
    const auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n)
      throw FormatError("checkpoint truncated");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

int ParameterStore::add(std::string name, Mat init) {
  if (contains(name))
    throw ShapeMismatch("duplicate parameter '" + name + "'");
  Param p;
  p.name = std::move(name);
  p.grad = Mat::Zero(init.rows(), init.cols());
  p.m = Mat::Zero(init.rows(), init.cols());
  p.v = Mat::Zero(init.rows(), init.cols());
  p.value = std::move(init);
  params_.push_back(std::move(p));
  ++version_;
  return size() - 1;
}

int ParameterStore::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i].name == name)
      return static_cast<int>(i);
  return -1;
}

ParameterStore::Param &ParameterStore::mutate(int i) {
  ++version_;
  return params_[static_cast<std::size_t>(i)];
}

void ParameterStore::zero_grad() {
  for (auto &p: params_)
    p.grad.setZero();
}

std::size_t ParameterStore::num_values() const {
  std::size_t n = 0;
  for (const auto &p: params_)
    n += static_cast<std::size_t>(p.value.size());
  return n;
}

double ParameterStore::grad_norm() const {
  double s = 0;
  for (const auto &p: params_)
    s += p.grad.squaredNorm();
  return std::sqrt(s);
}

bool ParameterStore::grads_finite() const {
  for (const auto &p: params_)
    if (!p.grad.allFinite())
      return false;
  return true;
}

bool ParameterStore::values_finite() const {
  for (const auto &p: params_)
    if (!p.value.allFinite())
      return false;
  return true;
}

std::vector<Mat> ParameterStore::snapshot() const {
  std::vector<Mat> out;
  out.reserve(params_.size());
  for (const auto &p: params_)
    out.push_back(p.value);
  return out;
}

void ParameterStore::restore(const std::vector<Mat> &values) {
  if (values.size() != params_.size())
    throw ShapeMismatch("snapshot has a different parameter count");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].rows() != params_[i].value.rows()
        || values[i].cols() != params_[i].value.cols())
      throw ShapeMismatch("snapshot shape differs for '" + params_[i].name + "'");
    params_[i].value = values[i];
  }
  ++version_;
}

std::string ParameterStore::serialize() const {
  std::string out(kMagic);
  put_u64(out, params_.size());
  for (const auto &p: params_) {
    put_u64(out, p.name.size());
    out += p.name;
    put_u64(out, static_cast<std::uint64_t>(p.value.rows()));
    put_u64(out, static_cast<std::uint64_t>(p.value.cols()));
    for (Eigen::Index k = 0; k < p.value.size(); ++k)
      put_f64(out, p.value.data()[k]);
  }
  return out;
}

void ParameterStore::deserialize(std::string_view bytes) {
  Reader r(bytes);
  if (r.take(kMagic.size()) != kMagic)
    throw FormatError("not a checkpoint file (bad magic)");
  const std::uint64_t count = r.u64();
  if (count != params_.size())
    throw ShapeMismatch("checkpoint has " + std::to_string(count)
                        + " arrays, model expects "
                        + std::to_string(params_.size()));
  std::vector<Mat> values;
  for (std::uint64_t i = 0; i < count; ++i) {
    const Param &p = params_[i];
    const std::uint64_t name_len = r.u64();
    if (name_len > 4096)
      throw FormatError("checkpoint array name too long");
    const std::string_view name = r.take(name_len);
    const std::uint64_t rows = r.u64();
    const std::uint64_t cols = r.u64();
    if (name != p.name || rows != static_cast<std::uint64_t>(p.value.rows())
        || cols != static_cast<std::uint64_t>(p.value.cols()))
      throw ShapeMismatch("checkpoint array '" + std::string(name)
                          + "' does not match model parameter '" + p.name + "'");
    Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index k = 0; k < m.size(); ++k)
      m.data()[k] = r.f64();
    values.push_back(std::move(m));
  }
  if (!r.done())
    throw FormatError("trailing bytes after checkpoint");
  restore(values);
}

void ParameterStore::save(const std::string &path) const {
  util::write_file_atomic(path, serialize());
}

void ParameterStore::load(const std::string &path) {
  deserialize(util::read_file(path));
}

}  // namespace aisens::nn
