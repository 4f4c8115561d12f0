#pragma once

// Independent HOMFLY-PT oracle: the Ocneanu trace on the Hecke algebra, and
// the change of variables relating homology Euler characteristics to it.
//
// Conventions: a P(+) - a^{-1} P(-) = (q - q^{-1}) P(0), P(unknot) = 1.
// Generators satisfy a h - a^{-1} h^{-1} = z with z = q - q^{-1}, so
// h^2 = (z/a) h + a^{-2} and h^{-1} = a^2 h - a z.  The trace satisfies
// Tr(xy) = Tr(yx), Tr(x h_{n-1}) = Tr(x) and Tr(x) = delta Tr(x) for x on
// fewer strands, delta = (a - a^{-1}) / z.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "vkr/braid.hpp"
#include "vkr/laurent.hpp"

namespace vkr {

/// Polynomial in delta with Laurent coefficients.
using DeltaPoly = std::map<int, Laurent>;

inline void add_to(DeltaPoly& p, int k, const Laurent& c) {
  if (c.is_zero()) return;
  auto& slot = p[k];
  slot += c;
  if (slot.is_zero()) p.erase(k);
}

class HeckeAlgebra {
 public:
  using Perm = std::vector<int>;  // one-line notation, 0-based values
  using Element = std::map<Perm, Laurent>;

  explicit HeckeAlgebra(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("HeckeAlgebra: need at least one strand");
  }

  Element one() const {
    Perm id(n_);
    std::iota(id.begin(), id.end(), 0);
    return {{id, Laurent::constant(1)}};
  }

  /// x * h_i (i 1-based).
  Element times_h(const Element& x, int i) const {
    Element r;
    Laurent z_over_a = Laurent::monomial(-1, 1) - Laurent::monomial(-1, -1);
    Laurent a_m2 = Laurent::monomial(-2, 0);
    for (const auto& [w, c] : x) {
      Perm ws = w;
      std::swap(ws[i - 1], ws[i]);
      if (w[i - 1] < w[i]) {
        add(r, ws, c);
      } else {
        add(r, w, c * z_over_a);
        add(r, ws, c * a_m2);
      }
    }
    return r;
  }

  /// x * h_i^{-1} = a^2 x h_i - a z x.
  Element times_h_inverse(const Element& x, int i) const {
    Element r = times_h(x, i);
    Element out;
    Laurent a2 = Laurent::monomial(2, 0);
    Laurent az = Laurent::monomial(1, 1) - Laurent::monomial(1, -1);
    for (const auto& [w, c] : r) add(out, w, c * a2);
    for (const auto& [w, c] : x) add(out, w, -(c * az));
    return out;
  }

  Element of_braid(const BraidWord& b) const {
    if (b.n != n_) throw std::invalid_argument("HeckeAlgebra: strand count mismatch");
    Element x = one();
    for (const auto& l : b.letters) x = l.sign > 0 ? times_h(x, l.index) : times_h_inverse(x, l.index);
    return x;
  }

  /// Ocneanu trace as a polynomial in delta.
  DeltaPoly trace(const Element& x) const {
    DeltaPoly r;
    for (const auto& [w, c] : x)
      for (const auto& [k, t] : trace_basis(w)) add_to(r, k, t * c);
    return r;
  }

 private:
  static void add(Element& e, const Perm& w, const Laurent& c) {
    if (c.is_zero()) return;
    auto& slot = e[w];
    slot += c;
    if (slot.is_zero()) e.erase(w);
  }

  // Tr(T_w) for w on the first m strands, memoized.
  DeltaPoly trace_basis(const Perm& w) const {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    int m = static_cast<int>(w.size());
    DeltaPoly r;
    if (m == 1) {
      r[0] = Laurent::constant(1);
    } else if (w[m - 1] == m - 1) {
      Perm v(w.begin(), w.end() - 1);
      for (const auto& [k, c] : trace_basis(v)) add_to(r, k + 1, c);
    } else {
      // w = v s_{m-1} ... s_k with v(m) = m, so T_w = T_v h_{m-1} ... h_k and
      // Tr(T_w) = Tr(T_v h_{m-2} ... h_k) on m-1 strands
      int k = static_cast<int>(std::find(w.begin(), w.end(), m - 1) - w.begin()) + 1;
      Perm v = w;
      for (int s = k; s <= m - 1; ++s) std::swap(v[s - 1], v[s]);
      Perm vs(v.begin(), v.end() - 1);
      HeckeAlgebra H(m - 1);
      Element x{{vs, Laurent::constant(1)}};
      for (int s = m - 2; s >= k; --s) x = H.times_h(x, s);
      for (const auto& [u, c] : x)
        for (const auto& [e, t] : trace_basis(u)) add_to(r, e, t * c);
    }
    memo_.emplace(w, r);
    return r;
  }

  int n_;
  mutable std::map<Perm, DeltaPoly> memo_;
};

/// Substitute delta = (a - a^{-1}) / (q - q^{-1}); throws std::domain_error
/// when the result is not a Laurent polynomial.
inline Laurent evaluate_delta(const DeltaPoly& p) {
  if (p.empty()) return {};
  int K = p.rbegin()->first;
  Laurent amin = Laurent::monomial(1, 0) - Laurent::monomial(-1, 0);
  Laurent z = Laurent::monomial(0, 1) - Laurent::monomial(0, -1);
  Laurent num;
  for (const auto& [k, c] : p) num += c * amin.pow(k) * z.pow(K - k);
  for (int s = 0; s < K; ++s) num = num.divide_by_q_minus_inverse();
  return num;
}

inline DeltaPoly homfly_delta(const BraidWord& b) {
  HeckeAlgebra H(b.n);
  return H.trace(H.of_braid(b));
}

/// HOMFLY-PT polynomial of the closure of b.
inline Laurent homfly_oracle(const BraidWord& b) { return evaluate_delta(homfly_delta(b)); }

/// Sum over resolutions of (-1)^{#negative} P(resolution).
inline Laurent vassiliev_oracle(const SingularBraidWord& w) {
  int m = w.singular_count();
  DeltaPoly total;
  for (int v = 0; v < (1 << m); ++v) {
    std::vector<int> signs(m);
    int neg = 0;
    for (int t = 0; t < m; ++t) {
      signs[t] = (v >> t & 1) ? 1 : -1;
      if (signs[t] < 0) ++neg;
    }
    for (const auto& [k, c] : homfly_delta(w.resolve(signs))) add_to(total, k, neg % 2 ? -c : c);
  }
  return evaluate_delta(total);
}

/// The frozen change of variables from the homology Euler characteristic
/// E(A, Q) = sum (-1)^k A^i Q^j dim to the HOMFLY-PT polynomial:
///   P(a, q) = (-1)^shift E(-a^2 q^2, q),  shift = (n - 1 - writhe)/2.
struct ChangeOfVariables {
  static constexpr const char* description = "P(a,q) = (-1)^s * E(A -> -a^2 q^2, Q -> q), s = (n-1-writhe)/2";

  static Laurent apply(const Laurent& euler, int shift) {
    Laurent p = euler.substitute(-1, 2, 2, 1, 0, 1);
    return shift % 2 ? -p : p;
  }

  /// sl_N specialization a = q^N of a HOMFLY-PT polynomial, as a polynomial in q.
  static Laurent specialize(const Laurent& P, int N) { return P.substitute(1, 0, N, 1, 0, 1); }
};

/// True if x = +- q^e y for some e (compared as polynomials in q only).
inline bool equal_up_to_monomial(const Laurent& x, const Laurent& y, int* sign = nullptr, int* shift = nullptr) {
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  auto [xa, xq] = x.min_exponents();
  auto [ya, yq] = y.min_exponents();
  for (int s : {1, -1}) {
    Laurent t = y.substitute(1, 1, 0, 1, 0, 1) * Laurent::monomial(xa - ya, xq - yq, s);
    if (t == x) {
      if (sign) *sign = s;
      if (shift) *shift = xq - yq;
      return true;
    }
  }
  return false;
}

}  // namespace vkr
