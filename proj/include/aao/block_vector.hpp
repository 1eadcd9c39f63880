#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace aao {

/// State vector of an all-at-once system: n time blocks of m spatial
/// unknowns each, stored contiguously block by block.
struct BlockVector {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> data;

  BlockVector() = default;
  BlockVector(std::size_t n_blocks, std::size_t block_size)
      : n(n_blocks), m(block_size), data(n_blocks * block_size, 0.0) {}

  std::size_t size() const { return data.size(); }

  std::span<double> block(std::size_t k) {
    assert(k < n);
    return {data.data() + k * m, m};
  }
  std::span<const double> block(std::size_t k) const {
    assert(k < n);
    return {data.data() + k * m, m};
  }

  bool same_shape(const BlockVector& other) const {
    return n == other.n && m == other.m;
  }

  void set_zero() { std::fill(data.begin(), data.end(), 0.0); }
};

inline double dot(const BlockVector& x, const BlockVector& y) {
  assert(x.size() == y.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.data.size(); ++i) s += x.data[i] * y.data[i];
  return s;
}

inline double norm2(const BlockVector& x) { return std::sqrt(dot(x, x)); }

/// y += alpha * x
inline void axpy(double alpha, const BlockVector& x, BlockVector& y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.data.size(); ++i) y.data[i] += alpha * x.data[i];
}

inline void scale(double alpha, BlockVector& x) {
  for (double& v : x.data) v *= alpha;
}

}  // namespace aao
