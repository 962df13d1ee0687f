#pragma once

// The four circdet subcommands. Each writes its result to `out`, diagnostics
// to `err`, and returns the process exit status.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "circdet/circdet.hpp"
#include "circdet/cli/config.hpp"

namespace circdet::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_usage = 2;

inline int exit_code(errc code) { return 10 + static_cast<int>(code); }

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// det
// ---------------------------------------------------------------------------

struct det_record {
  std::size_t n = 0;
  std::size_t m = 0;
  det_report report;
};

/// Runs one method. The lemma path falls back to Bareiss when alpha_1 = 0.
inline det_report compute(const recurrence_spec& spec, std::size_t n, method which, const run_config& cfg) {
  switch (which) {
    case method::lemma:
      try {
        return det_lemma(spec, n);
      } catch (const error& e) {
        if (e.code() != errc::degenerate_alpha1) throw;
        det_report r = report_bareiss(circulant_from_spec(spec, n));
        r.flags.insert(det_flag::alpha1_zero_fallback);
        return r;
      }
    case method::bareiss: return report_bareiss(circulant_from_spec(spec, n));
    case method::spectral: return report_spectral(circulant_from_spec(spec, n), cfg.precision);
    case method::closed: return det_closed(spec, n, cfg.variant);
    case method::all: break;
  }
  throw error(errc::parse_error, "method 'all' is not a single method");
}

inline std::vector<method> methods_for(const run_config& cfg, const recurrence_spec& spec, std::size_t n) {
  const method choice = cfg.method_choice.value_or(n <= 16 ? method::all : method::closed);
  if (choice != method::all) {
    if (!cfg.method_choice && !has_closed_form(spec, n)) return {method::bareiss};
    return {choice};
  }
  std::vector<method> ms;
  if (n > spec.order()) ms.push_back(method::lemma);
  ms.push_back(method::bareiss);
  ms.push_back(method::spectral);
  if (has_closed_form(spec, n)) ms.push_back(method::closed);
  return ms;
}

inline std::string flags_string(const det_report& r, char sep) {
  std::string s;
  for (det_flag f : r.flags) {
    if (!s.empty()) s += sep;
    s += to_string(f);
  }
  return s;
}

inline ordered_json to_json(const det_record& rec) {
  ordered_json j;
  j["n"] = rec.n;
  j["m"] = rec.m;
  j["method"] = rec.report.method_name();
  j["det"] = rec.report.value_string();
  j["flags"] = ordered_json::array();
  for (det_flag f : rec.report.flags) j["flags"].push_back(to_string(f));
  j["elapsed_ns"] = rec.report.elapsed.count();
  if (!rec.report.is_exact())
    j["imag_residual"] = format_float(std::get<spectral_estimate>(rec.report.value).imag_residual);
  return j;
}

inline void render_det(const std::vector<det_record>& records, output_format fmt, std::ostream& out) {
  switch (fmt) {
    case output_format::plain:
      // Timing is left out so exact results print byte-identically across runs.
      for (const auto& rec : records) {
        out << "n=" << rec.n << " m=" << rec.m << " method=" << rec.report.method_name()
            << " det=" << rec.report.value_string();
        if (!rec.report.flags.empty()) out << " flags=" << flags_string(rec.report, ',');
        if (!rec.report.is_exact())
          out << " imag_residual=" << format_float(std::get<spectral_estimate>(rec.report.value).imag_residual, 6);
        out << '\n';
      }
      break;
    case output_format::json: {
      ordered_json arr = ordered_json::array();
      for (const auto& rec : records) arr.push_back(to_json(rec));
      out << arr.dump(2) << '\n';
      break;
    }
    case output_format::csv:
      out << "n,m,method,det,flags,elapsed_ns,imag_residual\n";
      for (const auto& rec : records) {
        out << rec.n << ',' << rec.m << ',' << rec.report.method_name() << ',' << rec.report.value_string() << ','
            << flags_string(rec.report, ';') << ',' << rec.report.elapsed.count() << ',';
        if (!rec.report.is_exact())
          out << format_float(std::get<spectral_estimate>(rec.report.value).imag_residual, 6);
        out << '\n';
      }
      break;
  }
}

/// True when every exact record equals the first exact one and every
/// spectral record crosschecks against it.
inline bool records_agree(const std::vector<det_record>& records, double rel_tol, std::ostream& err) {
  const det_record* ref = nullptr;
  for (const auto& rec : records)
    if (rec.report.is_exact()) {
      ref = &rec;
      break;
    }
  if (ref == nullptr) return true;
  bool ok = true;
  for (const auto& rec : records) {
    const bool same = rec.report.is_exact()
                          ? rec.report.exact_value() == ref->report.exact_value()
                          : crosscheck(ref->report.exact_value(), std::get<spectral_estimate>(rec.report.value), rel_tol);
    if (!same) {
      ok = false;
      err << "mismatch n=" << rec.n << ": " << rec.report.method_name() << " = " << rec.report.value_string()
          << " vs " << ref->report.method_name() << " = " << ref->report.value_string() << '\n';
    }
  }
  return ok;
}

inline int cmd_det(const run_config& cfg, std::ostream& out, std::ostream& err) {
  const recurrence_spec spec = cfg.spec();
  if (cfg.n_list.empty()) throw error(errc::parse_error, "det needs --n or --n-list");
  std::vector<det_record> records;
  bool ok = true;
  for (std::size_t n : cfg.n_list) {
    if (n == 0) throw error(errc::order_too_small, "n must be at least 1");
    std::vector<det_record> batch;
    for (method which : methods_for(cfg, spec, n)) batch.push_back({n, spec.order(), compute(spec, n, which, cfg)});
    ok = records_agree(batch, cfg.rel_tol, err) && ok;
    records.insert(records.end(), batch.begin(), batch.end());
  }
  render_det(records, cfg.format, out);
  return ok ? exit_ok : exit_mismatch;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct mismatch {
  std::string spec;
  std::size_t n = 0;
  std::string pair;
  std::vector<std::string> values;
};

struct verify_report {
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::size_t fallbacks = 0;
  std::vector<mismatch> mismatches;

  void merge(const verify_report& other) {
    checks += other.checks;
    fallbacks += other.fallbacks;
    mismatches.insert(mismatches.end(), other.mismatches.begin(), other.mismatches.end());
  }
};

namespace detail {

class checker {
 public:
  checker(verify_report& rep, std::string label, std::size_t n) : rep_(rep), label_(std::move(label)), n_(n) {}

  void equal(const std::string& pair, const exact& got, const exact& want) {
    ++rep_.checks;
    if (got != want) rep_.mismatches.push_back({label_, n_, pair, {to_string(got), to_string(want)}});
  }

  void holds(const std::string& what, bool ok, std::string detail = {}) {
    ++rep_.checks;
    if (!ok) rep_.mismatches.push_back({label_, n_, what, {detail.empty() ? "false" : detail}});
  }

  /// Runs `body`; a structure violation or other library error becomes a mismatch.
  template <class F>
  void guarded(const std::string& what, F&& body) {
    try {
      body();
    } catch (const error& e) {
      holds(what, false, e.what());
    }
  }

 private:
  verify_report& rep_;
  std::string label_;
  std::size_t n_;
};

/// Lemma vs Bareiss plus the transform checks for one (spec, n).
inline void check_instance(const recurrence_spec& spec, std::size_t n, const std::string& label, verify_report& rep) {
  checker chk(rep, label, n);
  const circulant_matrix mat = circulant_from_spec(spec, n);
  const exact oracle = det_bareiss(mat.materialize());
  const alpha_vector al = alpha(spec, n);
  chk.equal("alpha1/a1-a(n+1)", al[1], generate(spec, n + 1)[1] - generate(spec, n + 1)[n + 1]);
  const exact sign = transform_sign(n);
  chk.equal("det(P)/sign", det_bareiss(build_P(spec, n)), sign);
  if (spec.order() >= 2 && sgn(al[1]) == 0) {
    ++rep.fallbacks;
    return;
  }
  chk.guarded("lemma/bareiss", [&] { chk.equal("lemma/bareiss", det_lemma_value(spec, n), oracle); });
  chk.equal("det(Q)/sign", det_bareiss(build_Q(al, n)), sign);
  chk.guarded("paq-structure", [&] {
    verify_paq_structure(mat, spec);
    chk.holds("paq-structure", true);
  });
}

inline void check_family(const family_tag& tag, const run_config& cfg, verify_report& rep) {
  const recurrence_spec spec = from_family(tag);
  const std::string label = family_name(tag);
  const std::size_t m = spec.order();
  for (std::size_t n = m + 1; n <= cfg.n_max; ++n) {
    check_instance(spec, n, label, rep);
    checker chk(rep, label, n);
    const circulant_matrix mat = circulant_from_spec(spec, n);
    const exact oracle = det_bareiss(mat.materialize());

    chk.holds("spectral/bareiss", crosscheck(oracle, det_spectral(mat, cfg.precision), cfg.rel_tol));
    if (m == 2 && n > 3) {
      const second_order_params p{spec.coeff(1), spec.coeff(2), spec.initial(1), spec.initial(2)};
      chk.equal("second-order-" + to_string(cfg.variant) + "/bareiss", det_second_order(p, n, cfg.variant), oracle);
    }
    if (std::holds_alternative<family::fibonacci>(tag) && n >= 3)
      chk.equal("fibonacci-shen/bareiss", det_fibonacci_shen(n), oracle);
    if (std::holds_alternative<family::lucas>(tag) && n >= 3)
      chk.equal("lucas-shen/bareiss", det_lucas_shen(n), oracle);
    if (const auto* g = std::get_if<family::geometric>(&tag)) chk.equal("geometric/bareiss", det_geometric(g->ratio, n), oracle);
    if (std::holds_alternative<family::tribonacci>(tag)) {
      const exact tri = det_tribonacci(n);
      chk.equal("tribonacci/bareiss", tri, oracle);
      chk.equal("tribonacci/lemma", tri, det_lemma_value(spec, n));
      const tribonacci_context ctx(n);
      chk.holds("tribonacci-discriminant<0", sgn(ctx.discriminant()) < 0, to_string(ctx.discriminant()));
      for (std::size_t k = 2; k <= 12; ++k)
        for (std::size_t t = 2; t <= k; ++t)
          chk.holds("wronskian(" + std::to_string(k) + "," + std::to_string(t) + ")",
                    binet_wronskian_identity(ctx.alpha(), k, t));
    }
  }
}

inline std::vector<family_tag> builtin_families() {
  return {family::fibonacci{},        family::lucas{},       family::jacobsthal{},
          family::jacobsthal_lucas{}, family::tribonacci{},  family::geometric{2},
          family::geometric{-2},      family::geometric{3},  family::geometric{make_exact(1, 2)},
          family::geometric{-1}};
}

/// Random recurrences with order in 1..m_max and entries in [-3, 3], c_m != 0.
/// Drawn sequentially from one engine so the list depends only on the seed.
inline std::vector<recurrence_spec> random_specs(std::uint64_t seed, std::size_t count, std::size_t m_max) {
  std::mt19937_64 rng(seed);
  auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  std::vector<recurrence_spec> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto m = static_cast<std::size_t>(draw(1, static_cast<long>(m_max)));
    std::vector<exact> c, a;
    for (std::size_t i = 0; i < m; ++i) c.emplace_back(draw(-3, 3));
    while (sgn(c.back()) == 0) c.back() = draw(-3, 3);
    for (std::size_t i = 0; i < m; ++i) a.emplace_back(draw(-3, 3));
    out.emplace_back(std::move(c), std::move(a));
  }
  return out;
}

inline std::string spec_label(const recurrence_spec& spec) {
  std::string s = "c=";
  for (std::size_t i = 1; i <= spec.order(); ++i) s += (i > 1 ? "," : "") + to_string(spec.coeff(i));
  s += ";a=";
  for (std::size_t i = 1; i <= spec.order(); ++i) s += (i > 1 ? "," : "") + to_string(spec.initial(i));
  return s;
}

}  // namespace detail

inline verify_report run_verify(const run_config& cfg) {
  verify_report rep;
  for (const auto& tag : detail::builtin_families()) detail::check_family(tag, cfg, rep);
  if (cfg.families_only) return rep;

  const auto specs = detail::random_specs(cfg.seed, cfg.trials, cfg.m_max);
  rep.trials = specs.size();
  std::vector<verify_report> per_trial(specs.size());
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t)
      for (std::size_t n = specs[t].order() + 1; n <= cfg.n_max; ++n)
        detail::check_instance(specs[t], n, detail::spec_label(specs[t]), per_trial[t]);
  };
  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    run_range(0, specs.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (specs.size() + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t lo = std::min(specs.size(), j * chunk);
      pool.emplace_back(run_range, lo, std::min(specs.size(), lo + chunk));
    }
  }
  for (const auto& r : per_trial) rep.merge(r);  // ordered by trial index
  return rep;
}

inline void render_verify(const verify_report& rep, const run_config& cfg, std::ostream& out) {
  if (cfg.format == output_format::json) {
    ordered_json j;
    j["seed"] = cfg.seed;
    j["eq2_variant"] = to_string(cfg.variant);
    j["trials"] = rep.trials;
    j["checks"] = rep.checks;
    j["fallbacks"] = rep.fallbacks;
    j["mismatches"] = ordered_json::array();
    for (const auto& mm : rep.mismatches)
      j["mismatches"].push_back({{"spec", mm.spec}, {"n", mm.n}, {"pair", mm.pair}, {"values", mm.values}});
    out << j.dump(2) << '\n';
    return;
  }
  if (cfg.format == output_format::csv) {
    out << "spec,n,pair,values\n";
    for (const auto& mm : rep.mismatches) {
      out << '"' << mm.spec << "\"," << mm.n << ',' << mm.pair << ',';
      for (std::size_t i = 0; i < mm.values.size(); ++i) out << (i ? ";" : "") << mm.values[i];
      out << '\n';
    }
    return;
  }
  out << "seed=" << cfg.seed << " trials=" << rep.trials << " n-max=" << cfg.n_max << " m-max=" << cfg.m_max
      << " eq2-variant=" << to_string(cfg.variant) << (cfg.families_only ? " families-only" : "") << '\n';
  out << "checks: " << rep.checks << '\n';
  out << "fallbacks: " << rep.fallbacks << '\n';
  out << "mismatches: " << rep.mismatches.size() << '\n';
  for (const auto& mm : rep.mismatches) {
    out << "  " << mm.spec << " n=" << mm.n << " " << mm.pair << ":";
    for (const auto& v : mm.values) out << ' ' << v;
    out << '\n';
  }
}

inline int cmd_verify(const run_config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.m_max < 1 || cfg.n_max < 2) throw error(errc::parse_error, "verify needs m-max >= 1 and n-max >= 2");
  if (cfg.m_max > 5 || cfg.n_max > 16) err << "warning: verify bounds beyond m-max 5 / n-max 16 may be slow\n";
  const verify_report rep = run_verify(cfg);
  render_verify(rep, cfg, out);
  return rep.mismatches.empty() ? exit_ok : exit_mismatch;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct bench_row {
  std::string method;
  std::size_t n = 0;
  std::int64_t median_ns = 0;
  std::size_t reps = 0;
  std::size_t digits = 0;
};

inline std::vector<bench_row> run_bench(const run_config& cfg, std::ostream& err) {
  const recurrence_spec spec = cfg.spec();
  if (cfg.n_list.empty()) throw error(errc::parse_error, "bench needs --n or --n-list");
  const std::size_t reps = std::max<std::size_t>(1, cfg.reps);
  std::vector<bench_row> rows;
  for (std::size_t n : cfg.n_list) {
    std::vector<method> ms;
    const method choice = cfg.method_choice.value_or(method::all);
    if (choice == method::all) {
      ms = {method::closed, method::bareiss, method::lemma, method::spectral};
    } else {
      ms = {choice};
    }
    // Keep only methods valid for this instance.
    std::erase_if(ms, [&](method w) {
      if (w == method::closed && !has_closed_form(spec, n)) return choice == method::all;
      if (w != method::lemma) return false;
      if (n <= spec.order()) return choice == method::all;
      const std::uint64_t cost = lemma_cost(spec.order(), n);
      if (spec.order() > 5 || cost > 1000)
        err << "warning: lemma at n=" << n << " needs " << cost << " inner determinants\n";
      if (cfg.op_budget != 0 && cost > cfg.op_budget) {
        err << "refusing lemma at n=" << n << ": " << cost << " inner determinants exceed --op-budget "
            << cfg.op_budget << '\n';
        return true;
      }
      return false;
    });
    if (ms.empty()) continue;

    std::vector<det_record> first;
    for (method w : ms) first.push_back({n, spec.order(), compute(spec, n, w, cfg)});
    if (!records_agree(first, cfg.rel_tol, err))
      throw error(errc::structure_violation, "methods disagree at n=" + std::to_string(n) + "; no timings reported");

    for (std::size_t i = 0; i < ms.size(); ++i) {
      std::vector<std::int64_t> samples{first[i].report.elapsed.count()};
      for (std::size_t r = 1; r < reps; ++r) samples.push_back(compute(spec, n, ms[i], cfg).elapsed.count());
      std::sort(samples.begin(), samples.end());
      const std::size_t digits = first[i].report.is_exact() ? digit_count(first[i].report.exact_value())
                                                            : digit_count(first.front().report.is_exact()
                                                                              ? first.front().report.exact_value()
                                                                              : exact(0));
      rows.push_back({first[i].report.method_name(), n, samples[samples.size() / 2], reps, digits});
    }
  }
  if (rows.empty()) throw error(errc::budget_exceeded, "nothing left to time");
  return rows;
}

inline int cmd_bench(const run_config& cfg, std::ostream& out, std::ostream& err) {
  const auto rows = run_bench(cfg, err);
  switch (cfg.format) {
    case output_format::json: {
      ordered_json arr = ordered_json::array();
      for (const auto& r : rows)
        arr.push_back({{"method", r.method}, {"n", r.n}, {"median_ns", r.median_ns}, {"reps", r.reps},
                       {"digits", r.digits}});
      out << arr.dump(2) << '\n';
      break;
    }
    case output_format::csv:
      out << "method,n,median_ns,reps,digits\n";
      for (const auto& r : rows)
        out << r.method << ',' << r.n << ',' << r.median_ns << ',' << r.reps << ',' << r.digits << '\n';
      break;
    case output_format::plain:
      out << std::left << std::setw(22) << "method" << std::setw(8) << "n" << std::setw(16) << "median_ns"
          << "digits\n";
      for (const auto& r : rows)
        out << std::left << std::setw(22) << r.method << std::setw(8) << r.n << std::setw(16) << r.median_ns
            << r.digits << '\n';
      break;
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// seq
// ---------------------------------------------------------------------------

inline int cmd_seq(const run_config& cfg, std::ostream& out, std::ostream& /*err*/) {
  if (cfg.count < 1) throw error(errc::parse_error, "--count must be at least 1");
  const sequence_window w = generate(cfg.spec(), cfg.count);
  switch (cfg.format) {
    case output_format::plain:
      for (std::size_t k = 1; k <= w.size(); ++k) out << (k > 1 ? " " : "") << to_string(w[k]);
      out << '\n';
      break;
    case output_format::json: {
      ordered_json arr = ordered_json::array();
      for (const exact& t : w.terms()) arr.push_back(to_string(t));
      out << arr.dump() << '\n';
      break;
    }
    case output_format::csv:
      out << "k,a_k\n";
      for (std::size_t k = 1; k <= w.size(); ++k) out << k << ',' << to_string(w[k]) << '\n';
      break;
  }
  return exit_ok;
}

inline int run(const run_config& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.cmd) {
    case command::det: return cmd_det(cfg, out, err);
    case command::verify: return cmd_verify(cfg, out, err);
    case command::bench: return cmd_bench(cfg, out, err);
    case command::seq: return cmd_seq(cfg, out, err);
  }
  return exit_usage;
}

}  // namespace circdet::cli
