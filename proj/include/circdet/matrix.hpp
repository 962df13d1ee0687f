#pragma once

#include <cstddef>
#include <vector>

#include "circdet/error.hpp"
#include "circdet/scalar.hpp"

namespace circdet {

/// Dense square matrix of exact scalars. Public indexing is 1-based.
class dense_matrix {
 public:
  dense_matrix() = default;
  explicit dense_matrix(std::size_t n) : n_(n), data_(n * n) {}

  static dense_matrix identity(std::size_t n) {
    dense_matrix m(n);
    for (std::size_t i = 1; i <= n; ++i) m(i, i) = 1;
    return m;
  }

  static dense_matrix from_rows(const std::vector<std::vector<exact>>& rows) {
    dense_matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw error(errc::length_mismatch, "matrix rows must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m.data_[i * m.n_ + j] = rows[i][j];
    }
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  exact& operator()(std::size_t i, std::size_t j) { return data_[(i - 1) * n_ + (j - 1)]; }
  const exact& operator()(std::size_t i, std::size_t j) const { return data_[(i - 1) * n_ + (j - 1)]; }

  const exact& at(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_) throw error(errc::index_out_of_range, "dense_matrix::at");
    return (*this)(i, j);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 1; j <= n_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const dense_matrix&, const dense_matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<exact> data_;
};

inline dense_matrix operator*(const dense_matrix& x, const dense_matrix& y) {
  if (x.size() != y.size()) throw error(errc::length_mismatch, "matrix product of different orders");
  const std::size_t n = x.size();
  dense_matrix out(n);
  exact acc;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t k = 1; k <= n; ++k) {
      const exact& xik = x(i, k);
      if (sgn(xik) == 0) continue;
      for (std::size_t j = 1; j <= n; ++j) {
        if (sgn(y(k, j)) == 0) continue;
        acc = xik * y(k, j);
        out(i, j) += acc;
      }
    }
  }
  return out;
}

inline exact trace(const dense_matrix& m) {
  exact t = 0;
  for (std::size_t i = 1; i <= m.size(); ++i) t += m(i, i);
  return t;
}

}  // namespace circdet
