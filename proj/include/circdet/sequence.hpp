#pragma once

// m-th order linear homogeneous recurrences
//
//   a_k = c_1 a_{k-1} + c_2 a_{k-2} + ... + c_m a_{k-m},   k >= m + 1,
//
// with c_m != 0 and initial terms a_1..a_m, plus the named second-order
// families and the tribonacci and geometric sequences.

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "circdet/error.hpp"
#include "circdet/scalar.hpp"

namespace circdet {

class recurrence_spec {
 public:
  recurrence_spec(std::vector<exact> coeffs, std::vector<exact> initials)
      : coeffs_(std::move(coeffs)), initials_(std::move(initials)) {
    if (coeffs_.size() != initials_.size())
      throw error(errc::length_mismatch, "coeffs has " + std::to_string(coeffs_.size()) + " entries, initials has " +
                                             std::to_string(initials_.size()));
    if (coeffs_.empty()) throw error(errc::empty_spec, "recurrence order must be at least 1");
    if (sgn(coeffs_.back()) == 0) throw error(errc::zero_leading_coefficient, "c_m must be nonzero");
  }

  std::size_t order() const noexcept { return coeffs_.size(); }

  /// c_i, 1-based.
  const exact& coeff(std::size_t i) const { return coeffs_.at(i - 1); }
  /// a_i for 1 <= i <= m.
  const exact& initial(std::size_t i) const { return initials_.at(i - 1); }

  const std::vector<exact>& coeffs() const noexcept { return coeffs_; }
  const std::vector<exact>& initials() const noexcept { return initials_; }

  friend bool operator==(const recurrence_spec&, const recurrence_spec&) = default;

 private:
  std::vector<exact> coeffs_;
  std::vector<exact> initials_;
};

inline recurrence_spec make_recurrence(std::vector<exact> coeffs, std::vector<exact> initials) {
  return recurrence_spec(std::move(coeffs), std::move(initials));
}

/// Terms a_1..a_L of a recurrence.
class sequence_window {
 public:
  sequence_window(std::vector<exact> terms, recurrence_spec source)
      : terms_(std::move(terms)), source_(std::move(source)) {}

  std::size_t size() const noexcept { return terms_.size(); }
  const exact& operator[](std::size_t k) const { return terms_[k - 1]; }
  const exact& at(std::size_t k) const {
    if (k < 1 || k > terms_.size()) throw error(errc::index_out_of_range, "sequence term " + std::to_string(k));
    return terms_[k - 1];
  }
  const std::vector<exact>& terms() const noexcept { return terms_; }
  const recurrence_spec& source() const noexcept { return source_; }

 private:
  std::vector<exact> terms_;
  recurrence_spec source_;
};

inline sequence_window generate(const recurrence_spec& spec, std::size_t count) {
  const std::size_t m = spec.order();
  std::vector<exact> t;
  t.reserve(count);
  for (std::size_t k = 0; k < count && k < m; ++k) t.push_back(spec.initials()[k]);
  exact acc, term;
  while (t.size() < count) {
    const std::size_t k = t.size();  // 0-based index of the new term
    acc = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      term = spec.coeff(i) * t[k - i];
      acc += term;
    }
    t.push_back(acc);
  }
  return sequence_window(std::move(t), spec);
}

// Family tags.
namespace family {
struct fibonacci {};
struct lucas {};
struct jacobsthal {};
struct jacobsthal_lucas {};
struct tribonacci {};
struct geometric {
  exact ratio;
};
struct second_order {
  exact p, q, a, b;
};
}  // namespace family

using family_tag = std::variant<family::fibonacci, family::lucas, family::jacobsthal, family::jacobsthal_lucas,
                                family::tribonacci, family::geometric, family::second_order>;

inline recurrence_spec from_family(const family_tag& tag) {
  auto ints = [](std::initializer_list<long> xs) {
    std::vector<exact> v;
    for (long x : xs) v.emplace_back(x);
    return v;
  };
  struct visitor {
    decltype(ints)& mk;
    recurrence_spec operator()(family::fibonacci) const { return {mk({1, 1}), mk({1, 1})}; }
    recurrence_spec operator()(family::lucas) const { return {mk({1, 1}), mk({1, 3})}; }
    recurrence_spec operator()(family::jacobsthal) const { return {mk({1, 2}), mk({1, 1})}; }
    recurrence_spec operator()(family::jacobsthal_lucas) const { return {mk({1, 2}), mk({1, 3})}; }
    recurrence_spec operator()(family::tribonacci) const { return {mk({1, 1, 1}), mk({1, 1, 2})}; }
    recurrence_spec operator()(const family::geometric& g) const {
      if (sgn(g.ratio) == 0) throw error(errc::invalid_family_params, "geometric ratio must be nonzero");
      return {{g.ratio}, {g.ratio}};
    }
    recurrence_spec operator()(const family::second_order& s) const {
      if (sgn(s.q) == 0) throw error(errc::invalid_family_params, "second-order q must be nonzero");
      return {{s.p, s.q}, {s.a, s.b}};
    }
  };
  return std::visit(visitor{ints}, tag);
}

inline std::string family_name(const family_tag& tag) {
  struct visitor {
    std::string operator()(family::fibonacci) const { return "fibonacci"; }
    std::string operator()(family::lucas) const { return "lucas"; }
    std::string operator()(family::jacobsthal) const { return "jacobsthal"; }
    std::string operator()(family::jacobsthal_lucas) const { return "jacobsthal-lucas"; }
    std::string operator()(family::tribonacci) const { return "tribonacci"; }
    std::string operator()(const family::geometric& g) const { return "geometric:" + to_string(g.ratio); }
    std::string operator()(const family::second_order& s) const {
      return "second-order:" + to_string(s.p) + "," + to_string(s.q) + "," + to_string(s.a) + "," + to_string(s.b);
    }
  };
  return std::visit(visitor{}, tag);
}

}  // namespace circdet
