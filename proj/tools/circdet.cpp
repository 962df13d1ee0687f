// circdet: determinants of circulant matrices generated by linear recurrences.
//
//   circdet <det|verify|bench|seq> [--family NAME | --coeffs c1,...,cm --init a1,...,am]
//           [--n N | --n-list N1,N2,...] [--method M] [--format plain|json|csv]
//           [--seed S] [--precision BITS] [--rel-tol T] [--eq2-variant pa|qa]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "circdet/cli/commands.hpp"

namespace {

using namespace circdet;
using namespace circdet::cli;

struct raw_options {
  std::string family;
  std::string coeffs;
  std::string init;
  std::optional<std::size_t> n;
  std::string n_list;
  std::string method;
  std::string format = "plain";
  std::optional<std::uint64_t> seed;
  unsigned precision = default_precision_bits;
  double rel_tol = default_rel_tol;
  std::string variant = "pa";
};

void add_common(CLI::App* sub, raw_options& raw) {
  sub->add_option("--family", raw.family,
                  "fibonacci | lucas | jacobsthal | jacobsthal-lucas | tribonacci | geometric:R | second-order:p,q,a,b");
  sub->add_option("--coeffs", raw.coeffs, "recurrence coefficients c1,...,cm");
  sub->add_option("--init", raw.init, "initial terms a1,...,am");
  sub->add_option("--n", raw.n, "matrix order");
  sub->add_option("--n-list", raw.n_list, "comma-separated matrix orders");
  sub->add_option("--method", raw.method, "lemma | bareiss | spectral | closed | all");
  sub->add_option("--format", raw.format, "plain | json | csv");
  sub->add_option("--seed", raw.seed, "random seed (default: $CIRCDET_SEED or 42)");
  sub->add_option("--precision", raw.precision, "spectral precision in bits (>= 53)");
  sub->add_option("--rel-tol", raw.rel_tol, "relative tolerance for the spectral crosscheck");
  sub->add_option("--eq2-variant", raw.variant, "pa | qa: companion term of the second-order formula");
}

run_config resolve(command cmd, const raw_options& raw, run_config cfg) {
  cfg.cmd = cmd;
  if (!raw.family.empty()) cfg.family = parse_family(raw.family);
  if (!raw.coeffs.empty() || !raw.init.empty()) {
    if (raw.coeffs.empty() || raw.init.empty()) throw error(errc::parse_error, "--coeffs and --init go together");
    cfg.coeffs = parse_scalar_list(raw.coeffs);
    cfg.initials = parse_scalar_list(raw.init);
  }
  if (raw.n) cfg.n_list.push_back(*raw.n);
  if (!raw.n_list.empty()) {
    const auto more = parse_size_list(raw.n_list);
    cfg.n_list.insert(cfg.n_list.end(), more.begin(), more.end());
  }
  if (!raw.method.empty()) cfg.method_choice = parse_method(raw.method);
  cfg.format = parse_format(raw.format);
  cfg.seed = raw.seed ? *raw.seed : seed_from_env();
  cfg.precision = raw.precision;
  cfg.rel_tol = raw.rel_tol;
  cfg.variant = parse_variant(raw.variant);
  if (!(cfg.rel_tol > 0)) throw error(errc::parse_error, "--rel-tol must be positive");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact determinants of circulant matrices generated by linear recurrences"};
  app.require_subcommand(1);

  raw_options raw;
  run_config extra;

  auto* det = app.add_subcommand("det", "compute a determinant with one or more methods");
  add_common(det, raw);

  auto* verify = app.add_subcommand("verify", "cross-check every method against the oracles");
  add_common(verify, raw);
  verify->add_option("--trials", extra.trials, "number of random recurrences");
  verify->add_option("--n-max", extra.n_max, "largest matrix order checked");
  verify->add_option("--m-max", extra.m_max, "largest random recurrence order");
  verify->add_flag("--families-only", extra.families_only, "skip the random suite");
  verify->add_option("--jobs", extra.jobs, "worker threads for the random suite");

  auto* bench = app.add_subcommand("bench", "time methods over a list of orders");
  add_common(bench, raw);
  bench->add_option("--reps", extra.reps, "repetitions per (method, n)");
  bench->add_option("--op-budget", extra.op_budget, "max inner determinants for the lemma method (0 = no limit)");

  auto* seq = app.add_subcommand("seq", "print sequence terms");
  add_common(seq, raw);
  seq->add_option("--count", extra.count, "number of terms");

  CLI11_PARSE(app, argc, argv);

  try {
    command cmd = command::det;
    if (*verify) cmd = command::verify;
    if (*bench) cmd = command::bench;
    if (*seq) cmd = command::seq;
    return run(resolve(cmd, raw, extra), std::cout, std::cerr);
  } catch (const circdet::error& e) {
    std::cerr << "circdet: " << e.what() << '\n';
    return e.code() == errc::parse_error ? exit_usage : exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "circdet: " << e.what() << '\n';
    return 3;
  }
}
