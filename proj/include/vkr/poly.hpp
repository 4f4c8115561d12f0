#pragma once

// Exact graded polynomials over S = Q[x_1..x_n]/(x_1+...+x_n) and S (x) S.
//
// The relation is eliminated at construction: x_n is rewritten as
// -(x_1+...+x_{n-1}) (likewise y_n on the right side), so every polynomial
// lives in the free ring on the first n-1 variables of each side and
// equality is structural.  Every variable has internal degree 2.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vkr {

using Rational = mpq_class;

enum class Side { Left, TwoSided };

/// Exponent vector over the free variables: x_1..x_{n-1} then (two-sided) y_1..y_{n-1}.
using Exponents = std::vector<int>;

inline int free_vars(int n, Side side) {
  int m = n > 0 ? n - 1 : 0;
  return side == Side::Left ? m : 2 * m;
}

class Poly {
 public:
  using Terms = std::map<Exponents, Rational>;

  Poly() = default;
  Poly(int n, Side side) : n_(n), side_(side) {
    if (n < 1) throw std::invalid_argument("Poly: strand count must be >= 1");
  }

  static Poly constant(int n, Side side, const Rational& c) {
    Poly p(n, side);
    if (c != 0) p.terms_[Exponents(free_vars(n, side), 0)] = c;
    return p;
  }
  static Poly one(int n, Side side = Side::Left) { return constant(n, side, 1); }

  static Poly monomial(int n, Side side, Exponents e, const Rational& c = 1) {
    if (static_cast<int>(e.size()) != free_vars(n, side))
      throw std::invalid_argument("Poly::monomial: exponent length mismatch");
    Poly p(n, side);
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
  }

  /// x_k (1-based) on the left, canonicalized.
  static Poly x(int n, int k, Side side = Side::Left) { return variable(n, side, k, false); }
  /// y_k (1-based) on the right side of S (x) S, canonicalized.
  static Poly y(int n, int k) { return variable(n, Side::TwoSided, k, true); }

  int strands() const { return n_; }
  Side side() const { return side_; }
  int nvars() const { return free_vars(n_, side_); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// True when the polynomial is a (possibly zero) rational constant.
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  Rational constant_term() const {
    auto it = terms_.find(Exponents(nvars(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  static int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

  /// Internal degree of a homogeneous polynomial (2 per variable); -1 for zero.
  /// Throws if the polynomial is not homogeneous.
  int degree() const {
    if (terms_.empty()) return -1;
    int d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) throw std::logic_error("Poly::degree: not homogeneous");
    return 2 * d;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return false;
    return true;
  }

  Poly& operator+=(const Poly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    Poly r(a.n_, a.side_);
    Exponents e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t t = 0; t < e.size(); ++t) e[t] = ea[t] + eb[t];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(int k) const {
    Poly r = one(n_, side_);
    for (int t = 0; t < k; ++t) r *= *this;
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.n_ == b.n_ && a.side_ == b.side_ && a.terms_ == b.terms_;
  }

  /// Re-canonicalize by rebuilding from scratch. Representations are already
  /// canonical, so this is the identity; kept for the idempotence property.
  Poly canonicalized() const {
    Poly r(n_, side_);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
  }

  /// Embed a left-only polynomial into S (x) S as x-variables.
  Poly as_two_sided() const {
    if (side_ == Side::TwoSided) return *this;
    Poly r(n_, Side::TwoSided);
    int m = nvars();
    for (const auto& [e, c] : terms_) {
      Exponents f(2 * m, 0);
      std::copy(e.begin(), e.end(), f.begin());
      r.terms_[f] = c;
    }
    return r;
  }

  /// Left-only polynomial f(x) rewritten in the y-variables of S (x) S.
  Poly as_right() const {
    if (side_ != Side::Left) throw std::logic_error("Poly::as_right: expects a left-only polynomial");
    Poly r(n_, Side::TwoSided);
    int m = nvars();
    for (const auto& [e, c] : terms_) {
      Exponents f(2 * m, 0);
      std::copy(e.begin(), e.end(), f.begin() + m);
      r.terms_[f] = c;
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    int m = n_ - 1;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      Rational a = abs(c);
      bool unit = total_degree(e) > 0 && a == 1;
      if (!unit) os << a.get_str();
      bool need_star = !unit;
      for (int t = 0; t < static_cast<int>(e.size()); ++t) {
        if (e[t] == 0) continue;
        if (need_star) os << "*";
        need_star = true;
        os << (t < m ? "x" : "y") << (t % std::max(m, 1)) + 1;
        if (e[t] > 1) os << "^" << e[t];
      }
    }
    return os.str();
  }

 private:
  static Poly variable(int n, Side side, int k, bool right) {
    if (k < 1 || k > n) throw std::out_of_range("Poly: variable index out of range");
    Poly p(n, side);
    int m = n - 1;
    int base = right ? m : 0;
    if (k < n) {
      Exponents e(p.nvars(), 0);
      e[base + k - 1] = 1;
      p.terms_[e] = 1;
    } else {
      for (int l = 0; l < m; ++l) {
        Exponents e(p.nvars(), 0);
        e[base + l] = 1;
        p.terms_[e] = -1;
      }
    }
    return p;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void check_compatible(const Poly& o) const {
    if (n_ != o.n_ || side_ != o.side_)
      throw std::invalid_argument("Poly: mismatched strand count or side");
  }

  int n_ = 1;
  Side side_ = Side::Left;
  Terms terms_;
};

/// phi_i = x_i (x) 1 - 1 (x) x_i in S (x) S.
inline Poly phi(int n, int i) { return Poly::x(n, i, Side::TwoSided) - Poly::y(n, i); }

/// (x_i^N - y_i^N)/(x_i - y_i) = sum_{a+b=N-1} x_i^a y_i^b.
inline Poly psi_quotient(int n, int i, int N) {
  if (N < 1) throw std::invalid_argument("psi_quotient: N must be >= 1");
  Poly x = Poly::x(n, i, Side::TwoSided), y = Poly::y(n, i);
  Poly r(n, Side::TwoSided);
  for (int a = 0; a < N; ++a) r += x.pow(a) * y.pow(N - 1 - a);
  return r;
}

/// Degree-j piece of the free polynomial ring on the canonical variables.
struct GradedPiece {
  int degree = 0;
  std::vector<Exponents> basis;
  std::size_t dim() const { return basis.size(); }
};

namespace detail {
inline void enumerate_exponents(int nv, int d, Exponents& cur, int pos, std::vector<Exponents>& out) {
  if (pos == nv - 1) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  // descending exponent of the current variable => lexicographically decreasing;
  // collected then reversed for increasing lex order
  for (int a = d; a >= 0; --a) {
    cur[pos] = a;
    enumerate_exponents(nv, d - a, cur, pos + 1, out);
  }
}
}  // namespace detail

/// All exponent vectors of total degree d over nv variables, in increasing
/// lexicographic order.
inline std::vector<Exponents> monomials_of_degree(int nv, int d) {
  std::vector<Exponents> out;
  if (d < 0) return out;
  if (nv == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponents cur(nv, 0);
  detail::enumerate_exponents(nv, d, cur, 0, out);
  std::reverse(out.begin(), out.end());
  return out;
}

inline GradedPiece enumerate_graded_piece(int n, Side side, int j) {
  if (j % 2 != 0) throw std::invalid_argument("enumerate_graded_piece: odd internal degree");
  if (j < 0) throw std::invalid_argument("enumerate_graded_piece: negative internal degree");
  GradedPiece g;
  g.degree = j;
  g.basis = monomials_of_degree(free_vars(n, side), j / 2);
  return g;
}

/// Position of an exponent vector in monomials_of_degree(nv, |e|), by ranking.
class MonomialIndex {
 public:
  MonomialIndex(int nv, int max_total) : nv_(nv), table_(nv + 1, std::vector<long>(max_total + 1, 0)) {
    // table_[v][d] = number of monomials in v variables of total degree d
    for (int d = 0; d <= max_total; ++d) table_[0][d] = d == 0 ? 1 : 0;
    for (int v = 1; v <= nv; ++v)
      for (int d = 0; d <= max_total; ++d)
        table_[v][d] = (d > 0 ? table_[v][d - 1] : 0) + table_[v - 1][d];
  }
  long count(int d) const { return d < 0 ? 0 : table_[nv_][d]; }
  /// Rank in increasing lex order.
  long rank(const Exponents& e) const {
    int d = Poly::total_degree(e);
    long r = 0;
    int rem = d;
    for (int p = 0; p < nv_ - 1; ++p) {
      // monomials with a smaller exponent at position p come first
      for (int a = 0; a < e[p]; ++a) r += table_[nv_ - p - 1][rem - a];
      rem -= e[p];
    }
    return r;
  }

 private:
  int nv_;
  std::vector<std::vector<long>> table_;
};

}  // namespace vkr
