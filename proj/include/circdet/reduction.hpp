#pragma once

// Order reduction of det circ(a_1..a_n) for a sequence obeying an m-th order
// recurrence. P and Q are unimodular up to sign and P*A*Q is block lower
// triangular: an m x m top-left block and a banded (n-m) x (n-m) lower
// triangular block with alpha_1 on its diagonal. Expanding gives
//
//   det A = (a_1 - a_{n+1})^{n-m}
//           * sum_{k_1..k_{m-1}=2..n} D(k_1..k_{m-1}) * prod_i b^{(i)}_{n-k_i+1}
//
// where D has first column (a_1..a_m) and column i+1 = (a_{(k_i)} .. a_{(k_i+m-1)}).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "circdet/circulant.hpp"
#include "circdet/error.hpp"
#include "circdet/matrix.hpp"
#include "circdet/oracle.hpp"
#include "circdet/scalar.hpp"
#include "circdet/sequence.hpp"

namespace circdet {

/// alpha_1..alpha_m for a given order n.
struct alpha_vector {
  std::vector<exact> values;
  std::size_t n = 0;

  std::size_t order() const noexcept { return values.size(); }
  const exact& operator[](std::size_t t) const { return values[t - 1]; }
};

/// b^{(r)}_1..b^{(r)}_L.
struct basis_sequence {
  std::size_t r = 0;
  std::vector<exact> terms;

  const exact& operator[](std::size_t s) const { return terms[s - 1]; }
};

namespace detail {

inline void require_order(const recurrence_spec& spec, std::size_t n) {
  if (n <= spec.order())
    throw error(errc::order_too_small,
                "n = " + std::to_string(n) + " must exceed the recurrence order m = " + std::to_string(spec.order()));
}

inline std::int64_t as_signed(std::size_t x) { return static_cast<std::int64_t>(x); }

}  // namespace detail

/// (-1)^{n(n+1)/2 - 1}, the common determinant of P and Q.
inline int transform_sign(std::size_t n) { return ((n * (n + 1) / 2 - 1) % 2 == 0) ? 1 : -1; }

inline alpha_vector alpha(const recurrence_spec& spec, std::size_t n) {
  detail::require_order(spec, n);
  const std::size_t m = spec.order();
  const circulant_matrix a(generate(spec, n).terms());
  alpha_vector out{{}, n};
  out.values.reserve(m);
  exact term;
  for (std::size_t t = 1; t <= m; ++t) {
    const std::size_t col = n - m + t;
    exact v = a.entry(n - m + 1, col);
    for (std::size_t i = 1; i + 1 <= m; ++i) {
      term = spec.coeff(i) * a.entry(n - m + 1 + i, col);
      v -= term;
    }
    term = spec.coeff(m) * a.entry(1, col);
    v -= term;
    out.values.push_back(std::move(v));
  }
  return out;
}

/// b^{(r)}_s = -sum_{t=2..m} (alpha_t / alpha_1) b^{(r)}_{s-t+1} for s >= m,
/// with b^{(r)}_i = delta_{i,r} for i < m. Empty for m = 1.
inline std::vector<basis_sequence> basis_sequences(const alpha_vector& alpha, std::size_t length) {
  const std::size_t m = alpha.order();
  if (m <= 1) return {};
  if (sgn(alpha[1]) == 0) throw error(errc::degenerate_alpha1, "alpha_1 = 0, basis recurrence undefined");
  if (length < m - 1)
    throw error(errc::order_too_small, "basis length " + std::to_string(length) + " is below m - 1");

  std::vector<exact> ratio(m + 1);
  for (std::size_t t = 2; t <= m; ++t) ratio[t] = -alpha[t] / alpha[1];

  std::vector<basis_sequence> out;
  out.reserve(m - 1);
  exact term;
  for (std::size_t r = 1; r < m; ++r) {
    basis_sequence b{r, {}};
    b.terms.reserve(length);
    for (std::size_t i = 1; i < m; ++i) b.terms.emplace_back(i == r ? 1 : 0);
    for (std::size_t s = m; s <= length; ++s) {
      exact v = 0;
      for (std::size_t t = 2; t <= m; ++t) {
        term = ratio[t] * b.terms[s - t];  // b_{s-t+1}
        v += term;
      }
      b.terms.push_back(std::move(v));
    }
    out.push_back(std::move(b));
  }
  return out;
}

inline dense_matrix build_P(const recurrence_spec& spec, std::size_t n) {
  detail::require_order(spec, n);
  const std::size_t m = spec.order();
  dense_matrix p(n);
  std::vector<bool> touched(n * n, false);
  auto set = [&](std::size_t i, std::size_t j, const exact& v) {
    if (touched[(i - 1) * n + (j - 1)])
      throw std::logic_error("build_P: cell (" + std::to_string(i) + "," + std::to_string(j) + ") assigned twice");
    touched[(i - 1) * n + (j - 1)] = true;
    p(i, j) = v;
  };
  set(1, 1, 1);
  for (std::size_t i = 2; i <= n; ++i) set(i, n + 2 - i, 1);
  set(m + 1, 1, -spec.coeff(m));
  for (std::size_t i = m + 1; i <= n; ++i) {
    for (std::size_t t = 1; t <= m; ++t) {
      const std::size_t j = n + 2 + t - i;  // i + j - t = n + 2
      if (j >= 1 && j <= n) set(i, j, -spec.coeff(t));
    }
  }
  return p;
}

inline dense_matrix build_Q(const alpha_vector& alpha, std::size_t n) {
  const std::size_t m = alpha.order();
  if (n <= m) throw error(errc::order_too_small, "build_Q needs n > m");
  dense_matrix q(n);
  q(1, 1) = 1;
  for (std::size_t i = 2; i <= n; ++i) q(i, n + 2 - i) = 1;
  if (m >= 2) {
    const auto b = basis_sequences(alpha, n - 1);
    for (std::size_t i = 2; i <= n - m + 1; ++i)
      for (std::size_t j = 2; j <= m; ++j) q(i, j) = b[j - 2][n - i + 1];
  }
  return q;
}

struct paq_report {
  alpha_vector alpha;
  dense_matrix product;  // P * A * Q
  exact det_p;
  exact det_q;
  exact det_a;
  exact det_product;
};

/// Multiplies P*A*Q exactly and checks the block structure the reduction
/// relies on. Throws structure_violation naming the first offending cell.
inline paq_report verify_paq_structure(const circulant_matrix& mat, const recurrence_spec& spec) {
  const std::size_t n = mat.order();
  const std::size_t m = spec.order();
  detail::require_order(spec, n);

  paq_report rep{alpha(spec, n), {}, {}, {}, {}, {}};
  const dense_matrix a = mat.materialize();
  const dense_matrix p = build_P(spec, n);
  const dense_matrix q = build_Q(rep.alpha, n);
  rep.product = p * a * q;
  const dense_matrix& r = rep.product;

  auto fail = [](std::size_t i, std::size_t j, const exact& want, const exact& got) {
    throw error(errc::structure_violation, "cell (" + std::to_string(i) + "," + std::to_string(j) + ") expected " +
                                               to_string(want) + ", got " + to_string(got));
  };
  auto expect = [&](std::size_t i, std::size_t j, const exact& want) {
    if (r(i, j) != want) fail(i, j, want, r(i, j));
  };

  const exact zero = 0;
  // Lower block: bands alpha_k on i - j = k - 1, zero elsewhere (including columns <= m).
  for (std::size_t i = m + 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (j <= m) {
        expect(i, j, zero);
        continue;
      }
      const auto k = detail::as_signed(i) - detail::as_signed(j) + 1;
      expect(i, j, (k >= 1 && k <= detail::as_signed(m)) ? rep.alpha[static_cast<std::size_t>(k)] : zero);
    }
  }
  // First column of the top block.
  expect(1, 1, mat.entry(1, 1));
  for (std::size_t i = 2; i <= m; ++i) expect(i, 1, mat.entry(n - i + 2, 1));
  // Top-left block, columns 2..m: sums of A entries against the basis sequences.
  if (m >= 2) {
    const auto b = basis_sequences(rep.alpha, n - 1);
    exact term;
    for (std::size_t i = 1; i <= m; ++i) {
      const std::size_t src = (i == 1) ? 1 : n - i + 2;
      for (std::size_t j = 2; j <= m; ++j) {
        exact want = 0;
        for (std::size_t k = 2; k <= n; ++k) {
          term = mat.entry(src, k) * b[j - 2][n - k + 1];
          want += term;
        }
        expect(i, j, want);
      }
    }
  }

  const exact sign = transform_sign(n);
  rep.det_p = det_bareiss(p);
  rep.det_q = det_bareiss(q);
  if (rep.det_p != sign) throw error(errc::structure_violation, "det P = " + to_string(rep.det_p));
  if (rep.det_q != sign) throw error(errc::structure_violation, "det Q = " + to_string(rep.det_q));
  rep.det_a = det_bareiss(a);
  rep.det_product = det_bareiss(r);
  if (rep.det_product != rep.det_a)
    throw error(errc::structure_violation,
                "det(PAQ) = " + to_string(rep.det_product) + " but det A = " + to_string(rep.det_a));
  return rep;
}

/// Number of inner m x m determinants the general formula sums over.
inline std::uint64_t lemma_cost(std::size_t m, std::size_t n) {
  std::uint64_t cost = 1;
  for (std::size_t i = 1; i < m; ++i) {
    if (cost > std::numeric_limits<std::uint64_t>::max() / (n - 1)) return std::numeric_limits<std::uint64_t>::max();
    cost *= n - 1;
  }
  return cost;
}

struct lemma_options {
  unsigned threads = 1;
  std::uint64_t op_budget = 0;  // 0 = unlimited
};

inline exact det_lemma_value(const recurrence_spec& spec, std::size_t n, const lemma_options& opts = {}) {
  detail::require_order(spec, n);
  const std::size_t m = spec.order();
  const sequence_window a = generate(spec, n + 1);
  const exact a1 = a[1];
  const exact base = a1 - a[n + 1];

  if (m == 1) return a1 * pow(base, n - 1);

  const std::uint64_t cost = lemma_cost(m, n);
  if (opts.op_budget != 0 && cost > opts.op_budget)
    throw error(errc::budget_exceeded,
                std::to_string(cost) + " inner determinants exceed the budget of " + std::to_string(opts.op_budget));

  const alpha_vector al = alpha(spec, n);
  if (sgn(al[1]) == 0) throw error(errc::degenerate_alpha1, "a_1 = a_{n+1}; use the Bareiss fallback");
  const auto b = basis_sequences(al, n - 1);
  const std::span<const exact> row(a.terms().data(), n);

  // Partial sum over the linear index range [first, last) of (k_1..k_{m-1}).
  auto partial = [&](std::uint64_t first, std::uint64_t last) {
    exact sum = 0;
    std::vector<std::size_t> ks(m - 1);
    dense_matrix d(m);
    exact prod;
    for (std::uint64_t idx = first; idx < last; ++idx) {
      std::uint64_t rest = idx;
      prod = 1;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        ks[i] = 2 + static_cast<std::size_t>(rest % (n - 1));
        rest /= n - 1;
        prod *= b[i][n - ks[i] + 1];
        if (sgn(prod) == 0) break;
      }
      if (sgn(prod) == 0) continue;
      for (std::size_t r = 1; r <= m; ++r) {
        d(r, 1) = a[r];
        for (std::size_t i = 0; i + 1 < m; ++i)
          d(r, i + 2) = wrapped_term(row, detail::as_signed(ks[i]) + detail::as_signed(r) - 1);
      }
      prod *= det_bareiss(d);
      sum += prod;
    }
    return sum;
  };

  exact total = 0;
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1 || cost < 2 * threads) {
    total = partial(0, cost);
  } else {
    std::vector<exact> parts(threads);
    {
      std::vector<std::jthread> pool;
      const std::uint64_t chunk = (cost + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t lo = std::min<std::uint64_t>(cost, t * chunk);
        const std::uint64_t hi = std::min<std::uint64_t>(cost, lo + chunk);
        pool.emplace_back([&, t, lo, hi] { parts[t] = partial(lo, hi); });
      }
    }
    for (const exact& x : parts) total += x;
  }
  return pow(base, n - m) * total;
}

inline det_report det_lemma(const recurrence_spec& spec, std::size_t n, const lemma_options& opts = {}) {
  return timed(det_method::lemma, [&] { return det_lemma_value(spec, n, opts); });
}

}  // namespace circdet
