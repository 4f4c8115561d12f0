#pragma once

// The command layer: runs one subcommand on one braid word and fills a
// ResultDocument.  Argument parsing lives in tools/vkr.cpp.

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vkr/braid.hpp"
#include "vkr/homology.hpp"
#include "vkr/io.hpp"
#include "vkr/oracle.hpp"
#include "vkr/vassiliev.hpp"

namespace vkr {

enum ExitCode { kOk = 0, kMismatch = 1, kInputError = 2, kInvariantViolation = 3 };

/// Bad user input: unknown subcommand, malformed flags or words.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"homfly-homology", "sln-homology", "vassiliev", "oracle", "compare"};
  return s;
}

namespace detail {

inline HomologyOptions options_of(const InputEcho& in) {
  HomologyOptions o;
  o.window.max_degree = in.max_degree;
  o.window.margin = in.margin;
  o.simplify = in.simplify;
  try {
    o.window.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return o;
}

inline void fill_homology(ResultDocument& d, const HomologyResult& r) {
  d.table = r.table;
  d.stabilized = r.stabilized;
  d.warnings = r.warnings;
}

/// Oracle for a word, or nullopt if the value is not a Laurent polynomial (some links).
inline std::optional<Laurent> try_oracle(const SingularBraidWord& w) {
  try {
    return w.singular_count() ? vassiliev_oracle(w) : homfly_oracle(w.as_braid());
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

inline void set_verdict_exact(ResultDocument& d) {
  if (!d.normalized || !d.oracle) return;
  d.verdict = *d.normalized == *d.oracle ? "match" : "mismatch";
}

inline void set_verdict_monomial(ResultDocument& d) {
  if (!d.normalized || !d.oracle) return;
  int sign = 1, shift = 0;
  if (equal_up_to_monomial(*d.oracle, *d.normalized, &sign, &shift)) {
    d.verdict = "match";
    d.conventions.normalization_sign = sign;
    d.conventions.normalization_q = shift;
  } else {
    d.verdict = "mismatch";
  }
}

inline void homfly_document(ResultDocument& d, const BraidWord& b, const HomologyOptions& o) {
  fill_homology(d, homfly_homology(b, o));
  d.conventions.shift = hochschild_shift(b);
  d.euler = d.table.euler();
  d.normalized = ChangeOfVariables::apply(d.euler, d.conventions.shift);
}

inline void sln_document(ResultDocument& d, const BraidWord& b, const HomologyOptions& o) {
  fill_homology(d, sln_homology(b, d.input.N, o));
  d.euler = d.table.sln_euler();
  d.normalized = d.euler;
}

inline void sln_conventions(Conventions& c, int N) {
  c.homological = "k: term of the Rouquier complex over the unreduced ring, reduced at a marked point on strand 1";
  c.hochschild = "i: collapsed degree j - (N+1)p";
  c.internal = "j: parity of the matrix factorization";
  c.change_of_variables = "sum (-1)^(k+j) q^i dim agrees with P(a = q^" + std::to_string(N) + ", q) up to sign and a power of q";
}

inline void vassiliev_document(ResultDocument& d, const SingularBraidWord& w, const HomologyOptions& o) {
  VassilievOptions vo;
  vo.homology = o;
  for (int t : d.input.order) vo.order.push_back(t - 1);
  if (!vo.order.empty()) {
    std::vector<int> sorted = vo.order;
    std::sort(sorted.begin(), sorted.end());
    for (int t = 0; t < static_cast<int>(sorted.size()); ++t)
      if (sorted[t] != t || static_cast<int>(sorted.size()) != w.singular_count())
        throw InputError("--order must list each singular letter 1.." + std::to_string(w.singular_count()) + " once");
  }
  VassilievResult r = vassiliev_homology(w, d.input.N, vo);
  fill_homology(d, r.homology);
  if (d.input.N == 0) {
    d.conventions.shift = r.positive_shift;
    d.conventions.hochschild = "i: shift of the resolution - p, so that wall-crossing preserves i";
    d.conventions.homological = "k: term degree minus twice the number of negative resolutions";
    d.euler = d.table.euler();
    d.normalized = ChangeOfVariables::apply(d.euler, d.conventions.shift);
  } else {
    d.euler = d.table.sln_euler();
    d.normalized = d.euler;
  }
}

/// A random cyclic rotation of b: conjugate to b and of the same length, so
/// the self-check costs about as much as the original run.
inline BraidWord random_conjugate(const BraidWord& b, std::uint64_t seed) {
  if (b.letters.size() < 2) return b;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> cut(1, b.letters.size() - 1);
  BraidWord c = b;
  std::rotate(c.letters.begin(), c.letters.begin() + static_cast<std::ptrdiff_t>(cut(rng)), c.letters.end());
  return c;
}

}  // namespace detail

/// Runs one subcommand.  Throws InputError, ParseError or InvariantViolation.
inline ResultDocument cli_run(const InputEcho& in) {
  auto t0 = std::chrono::steady_clock::now();
  const auto& subs = subcommands();
  if (std::find(subs.begin(), subs.end(), in.command) == subs.end()) throw InputError("unknown subcommand '" + in.command + "'");
  if (in.N < 0) throw InputError("--N must be positive");
  if (in.command == "sln-homology" && in.N < 1) throw InputError("sln-homology needs --N >= 1");
  SingularBraidWord w = parse(in.word);
  HomologyOptions o = detail::options_of(in);
  if (!in.order.empty() && in.command != "vassiliev" && !(in.command == "compare" && w.singular_count() > 0))
    throw InputError("--order applies to singular words only");

  ResultDocument d;
  d.input = in;
  d.conventions.change_of_variables = ChangeOfVariables::description;
  bool singular = w.singular_count() > 0;
  bool sln = in.N > 0;
  if (sln) detail::sln_conventions(d.conventions, in.N);

  if (in.command == "oracle") {
    d.oracle = detail::try_oracle(w);
    if (!d.oracle) d.warnings.push_back("the HOMFLY-PT polynomial of this link is not a Laurent polynomial");
    else if (sln) d.oracle = ChangeOfVariables::specialize(*d.oracle, in.N);
    d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return d;
  }

  if (in.command == "homfly-homology" && sln) throw InputError("homfly-homology does not take --N");
  if ((in.command == "homfly-homology" || in.command == "sln-homology") && singular)
    throw InputError(in.command + " takes a braid without singular letters; use vassiliev");
  if (in.command == "vassiliev" || singular) detail::vassiliev_document(d, w, o);
  else if (sln) detail::sln_document(d, w.as_braid(), o);
  else detail::homfly_document(d, w.as_braid(), o);

  // every homology run is checked against the oracle
  d.oracle = detail::try_oracle(w);
  if (!d.oracle) d.warnings.push_back("no Laurent oracle for this link");
  else if (sln) d.oracle = ChangeOfVariables::specialize(*d.oracle, in.N);
  if (sln) detail::set_verdict_monomial(d);
  else detail::set_verdict_exact(d);

  if (in.command == "compare" && in.seed && !singular && d.verdict == "match") {
    // seeded self-check: a random conjugate must give the same table
    ResultDocument e;
    e.input = in;
    BraidWord c = detail::random_conjugate(w.as_braid(), *in.seed);
    if (sln) detail::sln_document(e, c, o);
    else detail::homfly_document(e, c, o);
    if (!(e.table == d.table)) {
      d.verdict = "mismatch";
      d.warnings.push_back("conjugate " + c.str() + " gives a different table");
    }
  }
  d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return d;
}

/// Exit code of a finished run.
inline int exit_code_of(const ResultDocument& d) { return d.verdict == "mismatch" ? kMismatch : kOk; }

}  // namespace vkr
