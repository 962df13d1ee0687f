#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circdet/closed_forms.hpp"
#include "circdet/error.hpp"
#include "circdet/oracle.hpp"
#include "circdet/scalar.hpp"
#include "circdet/sequence.hpp"

namespace circdet::cli {

enum class command { det, verify, bench, seq };
enum class method { lemma, bareiss, spectral, closed, all };
enum class output_format { plain, json, csv };

inline constexpr std::uint64_t default_seed = 42;

struct run_config {
  command cmd = command::det;
  std::optional<family_tag> family;
  std::vector<exact> coeffs;
  std::vector<exact> initials;
  std::vector<std::size_t> n_list;
  std::optional<method> method_choice;  // unset: pick by n
  output_format format = output_format::plain;
  std::uint64_t seed = default_seed;
  unsigned precision = default_precision_bits;
  double rel_tol = default_rel_tol;
  eq2_variant variant = eq2_variant::pa;

  std::size_t count = 10;           // seq
  std::size_t trials = 200;         // verify
  std::size_t n_max = 12;           // verify
  std::size_t m_max = 4;            // verify
  bool families_only = false;       // verify
  unsigned jobs = 1;                // verify
  std::size_t reps = 5;             // bench
  std::uint64_t op_budget = 100000; // bench

  bool has_spec() const { return family.has_value() || !coeffs.empty(); }

  recurrence_spec spec() const {
    if (family && !coeffs.empty()) throw error(errc::parse_error, "give either --family or --coeffs/--init, not both");
    if (family) return from_family(*family);
    if (coeffs.empty()) throw error(errc::parse_error, "a recurrence is required (--family or --coeffs/--init)");
    return make_recurrence(coeffs, initials);
  }
};

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<exact> parse_scalar_list(std::string_view text) {
  std::vector<exact> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_exact(item));
  return out;
}

inline std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0' || item.front() == '-')
      throw error(errc::parse_error, "not a positive integer: '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

/// fibonacci, lucas, jacobsthal, jacobsthal-lucas, tribonacci,
/// geometric:R, second-order:p,q,a,b
inline family_tag parse_family(std::string_view name) {
  if (name == "fibonacci") return family::fibonacci{};
  if (name == "lucas") return family::lucas{};
  if (name == "jacobsthal") return family::jacobsthal{};
  if (name == "jacobsthal-lucas") return family::jacobsthal_lucas{};
  if (name == "tribonacci") return family::tribonacci{};
  if (name.starts_with("geometric:")) {
    family_tag tag = family::geometric{parse_exact(name.substr(10))};
    from_family(tag);  // validates the ratio
    return tag;
  }
  if (name.starts_with("second-order:")) {
    const auto v = parse_scalar_list(name.substr(13));
    if (v.size() != 4) throw error(errc::parse_error, "second-order needs p,q,a,b");
    family_tag tag = family::second_order{v[0], v[1], v[2], v[3]};
    from_family(tag);
    return tag;
  }
  throw error(errc::parse_error, "unknown family '" + std::string(name) + "'");
}

inline method parse_method(std::string_view s) {
  if (s == "lemma") return method::lemma;
  if (s == "bareiss") return method::bareiss;
  if (s == "spectral") return method::spectral;
  if (s == "closed") return method::closed;
  if (s == "all") return method::all;
  throw error(errc::parse_error, "unknown method '" + std::string(s) + "'");
}

inline output_format parse_format(std::string_view s) {
  if (s == "plain") return output_format::plain;
  if (s == "json") return output_format::json;
  if (s == "csv") return output_format::csv;
  throw error(errc::parse_error, "unknown format '" + std::string(s) + "'");
}

inline eq2_variant parse_variant(std::string_view s) {
  if (s == "pa") return eq2_variant::pa;
  if (s == "qa") return eq2_variant::qa;
  throw error(errc::parse_error, "unknown eq2 variant '" + std::string(s) + "'");
}

/// CIRCDET_SEED if set and well formed, else the built-in default.
inline std::uint64_t seed_from_env() {
  const char* env = std::getenv("CIRCDET_SEED");
  if (env == nullptr || *env == '\0') return default_seed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw error(errc::parse_error, std::string("CIRCDET_SEED is not an integer: ") + env);
  return v;
}

}  // namespace circdet::cli
