#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "circdet/error.hpp"
#include "circdet/matrix.hpp"
#include "circdet/scalar.hpp"
#include "circdet/sequence.hpp"

namespace circdet {

/// Resolves an arbitrary integer index into 1..n (the a_{(x)} shorthand).
struct wrapped_index {
  std::int64_t raw;
  std::size_t resolved;

  wrapped_index(std::int64_t x, std::size_t n) : raw(x) {
    if (n == 0) throw error(errc::index_out_of_range, "wrap modulus must be positive");
    const auto sn = static_cast<std::int64_t>(n);
    std::int64_t r = (x - 1) % sn;
    if (r < 0) r += sn;
    resolved = static_cast<std::size_t>(r) + 1;
  }
};

inline const exact& wrapped_term(std::span<const exact> row, std::int64_t x) {
  if (row.empty()) throw error(errc::index_out_of_range, "wrapped_term on empty row");
  return row[wrapped_index(x, row.size()).resolved - 1];
}

/// circ(a_1, ..., a_n): row i is row i-1 rotated right by one.
class circulant_matrix {
 public:
  explicit circulant_matrix(std::vector<exact> row, std::optional<recurrence_spec> source = std::nullopt)
      : row_(std::move(row)), source_(std::move(source)) {
    if (row_.empty()) throw error(errc::order_too_small, "circulant order must be at least 1");
  }

  std::size_t order() const noexcept { return row_.size(); }
  const std::vector<exact>& row() const noexcept { return row_; }
  const std::optional<recurrence_spec>& source() const noexcept { return source_; }

  /// A_ij = a_{j-i+1} if j >= i, else a_{n+j-i+1}.
  const exact& entry(std::size_t i, std::size_t j) const {
    const std::size_t n = order();
    if (i < 1 || j < 1 || i > n || j > n)
      throw error(errc::index_out_of_range,
                  "entry (" + std::to_string(i) + "," + std::to_string(j) + ") of order " + std::to_string(n));
    return j >= i ? row_[j - i] : row_[n + j - i];
  }

  dense_matrix materialize() const {
    const std::size_t n = order();
    dense_matrix m(n);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) m(i, j) = entry(i, j);
    return m;
  }

 private:
  std::vector<exact> row_;
  std::optional<recurrence_spec> source_;
};

inline circulant_matrix circulant_from_spec(const recurrence_spec& spec, std::size_t n) {
  if (n == 0) throw error(errc::order_too_small, "circulant order must be at least 1");
  return circulant_matrix(generate(spec, n).terms(), spec);
}

inline dense_matrix materialize(const circulant_matrix& m) { return m.materialize(); }

}  // namespace circdet
