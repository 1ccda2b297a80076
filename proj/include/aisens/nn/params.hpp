//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_NN_PARAMS_HPP_
#define AISENS_NN_PARAMS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace aisens::nn {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Named parameter arrays with same-shape gradient and Adam moment slots.
/// Insertion order is kept so iteration and checkpoints are stable.
class ParameterStore {
public:
  struct Param {
    std::string name;
    Mat value;
    Mat grad;
    Mat m;
    Mat v;
  };

  /// Returns the index of the new parameter. Throws ShapeMismatch on a
  /// duplicate name.
  int add(std::string name, Mat init);

  int size() const noexcept { return static_cast<int>(params_.size()); }
  int index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name) >= 0; }

  const Param &operator[](int i) const { return params_[static_cast<std::size_t>(i)]; }
  /// Mutable access bumps version(), which invalidates forward caches.
  Param &mutate(int i);
  const Mat &value(int i) const { return params_[static_cast<std::size_t>(i)].value; }
  Mat &grad(int i) { return params_[static_cast<std::size_t>(i)].grad; }

  std::uint64_t version() const noexcept { return version_; }
  void bump_version() noexcept { ++version_; }

  void zero_grad();
  std::size_t num_values() const;
  /// Euclidean norm over all gradients.
  double grad_norm() const;
  bool grads_finite() const;
  bool values_finite() const;

  /// Copies values only.
  std::vector<Mat> snapshot() const;
  void restore(const std::vector<Mat> &values);

  /// Binary "AISCKPT1" container: u64 count, then per array u64 name
  /// length, name bytes, u64 rows, u64 cols, rows*cols little-endian f64 in
  /// column-major order.
  std::string serialize() const;
  /// Loads values into an already shaped store. Throws FormatError on a
  /// corrupt file and ShapeMismatch when names or shapes differ.
  void deserialize(std::string_view bytes);

  void save(const std::string &path) const;
  void load(const std::string &path);

private:
  std::vector<Param> params_;
  std::uint64_t version_ = 0;
};

}  // namespace aisens::nn

#endif  // AISENS_NN_PARAMS_HPP_
