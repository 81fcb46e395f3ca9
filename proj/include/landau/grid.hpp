#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace landau {

using cplx = std::complex<double>;

/// Dense n1 x n2 field, x-major: element (j, l) lives at j * n2 + l.
template <class T>
class Field2D {
 public:
  using value_type = T;

  Field2D() = default;
  Field2D(std::size_t n1, std::size_t n2, T init = T{}) : n1_(n1), n2_(n2), data_(n1 * n2, init) {}

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t size() const { return data_.size(); }
  bool same_shape(const Field2D& o) const { return n1_ == o.n1_ && n2_ == o.n2_; }

  T& operator()(std::size_t j, std::size_t l) { return data_[j * n2_ + l]; }
  const T& operator()(std::size_t j, std::size_t l) const { return data_[j * n2_ + l]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> span() { return data_; }
  std::span<const T> span() const { return data_; }
  std::vector<T>& vec() { return data_; }
  const std::vector<T>& vec() const { return data_; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  bool operator==(const Field2D&) const = default;

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::vector<T> data_;
};

using RealField = Field2D<double>;
using ComplexField = Field2D<cplx>;

}  // namespace landau
