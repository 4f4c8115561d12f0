#pragma once

// Bounded complexes of bimodules, Rouquier complexes, tensor products with
// Koszul signs, cones, block-level Gaussian elimination and graded Euler
// characteristics.

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "vkr/bimodule.hpp"
#include "vkr/braid.hpp"

namespace vkr {

/// A bimodule summand of a complex term: the generators listed in `gens`
/// span a sub-bimodule, and `tuple` records the homological degree of each
/// tensor factor it came from (empty when not a tensor product).
struct Block {
  std::vector<int> gens;
  std::vector<int> tuple;
};

inline std::vector<int> iota_range(int offset, int size) {
  std::vector<int> g(size);
  for (int t = 0; t < size; ++t) g[t] = offset + t;
  return g;
}

struct BComplex {
  int n = 1;
  int lo = 0;                                         // homological degree of terms[0]
  std::vector<std::shared_ptr<const Bimodule>> terms;
  std::vector<std::vector<Block>> blocks;             // per term
  std::vector<BimoduleMap> d;                         // d[t]: terms[t] -> terms[t+1]

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool empty() const { return terms.empty(); }
  bool has(int k) const { return k >= lo && k <= hi(); }
  const Bimodule& term(int k) const { return *terms.at(k - lo); }
  std::shared_ptr<const Bimodule> term_ptr(int k) const { return terms.at(k - lo); }
  const BimoduleMap& diff(int k) const { return d.at(k - lo); }
  int total_rank() const {
    int r = 0;
    for (const auto& t : terms) r += t->rank();
    return r;
  }

  /// d^{k+1} d^k = 0 and map invariants; returns empty string when fine.
  std::string check() const {
    if (d.size() + 1 != terms.size() && !(terms.empty() && d.empty())) return "differential count mismatch";
    for (const auto& t : terms) {
      auto r = t->check();
      if (!r.empty()) return "term: " + r;
    }
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (d[t].degree != 0) return "differential has nonzero internal degree";
      auto r = d[t].check();
      if (!r.empty()) return "differential " + std::to_string(lo + static_cast<int>(t)) + ": " + r;
    }
    for (std::size_t t = 0; t + 1 < d.size(); ++t)
      if (!(d[t + 1].matrix * d[t].matrix).is_zero())
        return "d^2 != 0 at degree " + std::to_string(lo + static_cast<int>(t));
    return {};
  }
};

/// Degree-0 chain map between complexes; maps[k - lo] : X^k -> Y^k for k in [lo, hi].
struct ChainMap {
  const BComplex* source = nullptr;
  const BComplex* target = nullptr;
  int lo = 0;
  std::vector<BimoduleMap> maps;

  bool has(int k) const { return k >= lo && k < lo + static_cast<int>(maps.size()); }
  const BimoduleMap& at(int k) const { return maps.at(k - lo); }

  std::string check() const {
    const BComplex& X = *source;
    const BComplex& Y = *target;
    for (int k = std::min(X.lo, Y.lo) - 1; k <= std::max(X.hi(), Y.hi()); ++k) {
      // f^{k+1} d_X^k == d_Y^k f^k
      PolyMatrix lhs(X.n, Y.has(k + 1) ? Y.term(k + 1).rank() : 0, X.has(k) ? X.term(k).rank() : 0);
      PolyMatrix rhs = lhs;
      if (has(k + 1) && X.has(k) && X.has(k + 1)) lhs = at(k + 1).matrix * X.diff(k).matrix;
      if (has(k) && Y.has(k) && Y.has(k + 1)) rhs = Y.diff(k).matrix * at(k).matrix;
      if (!(lhs == rhs)) return "not a chain map at degree " + std::to_string(k);
    }
    for (const auto& m : maps) {
      if (m.degree != 0) return "chain map component has nonzero internal degree";
      auto e = m.check();
      if (!e.empty()) return e;
    }
    return {};
  }
};

namespace detail {
inline BimoduleMap zero_map(std::shared_ptr<const Bimodule> s, std::shared_ptr<const Bimodule> t) {
  BimoduleMap f;
  f.source = s;
  f.target = t;
  f.matrix = PolyMatrix(s->n, t->rank(), s->rank());
  return f;
}

inline Bimodule direct_sum(const std::vector<const Bimodule*>& parts, int n) {
  Bimodule b;
  b.n = n;
  int r = 0;
  for (auto* p : parts) r += p->rank();
  for (auto* p : parts) b.degrees.insert(b.degrees.end(), p->degrees.begin(), p->degrees.end());
  for (int k = 0; k < n; ++k) {
    PolyMatrix A(n, r, r);
    int off = 0;
    for (auto* p : parts) {
      for (int i = 0; i < p->rank(); ++i)
        for (int j = 0; j < p->rank(); ++j) A(off + i, off + j) = p->right[k](i, j);
      off += p->rank();
    }
    b.right.push_back(std::move(A));
  }
  return b;
}

inline void paste(PolyMatrix& big, const PolyMatrix& small, int r0, int c0, const Rational& sign = 1) {
  for (int i = 0; i < small.rows(); ++i)
    for (int j = 0; j < small.cols(); ++j)
      if (!small(i, j).is_zero()) big(r0 + i, c0 + j) += small(i, j) * sign;
}
}  // namespace detail

/// Two-term complex A --f--> B with A in homological degree `lo`.
inline BComplex two_term(const BimoduleMap& f, int lo) {
  BComplex c;
  c.n = f.source->n;
  c.lo = lo;
  c.terms = {f.source, f.target};
  c.blocks = {{Block{iota_range(0, f.source->rank()), {lo}}}, {Block{iota_range(0, f.target->rank()), {lo + 1}}}};
  c.d = {f};
  return c;
}

/// F(sigma_i) = S{2} --iota--> S_i{1}, degrees -1 and 0.
inline BComplex rouquier_positive(int n, int i) {
  BimoduleMap f = iota_map(n, i);
  f.source = share(identity_bimodule(n).shifted(2));
  f.target = share(bs_bimodule(n, i).shifted(1));
  return two_term(f, -1);
}

/// F(sigma_i^{-1}) = S_i{-1} --m_i--> S{-2}, degrees 0 and 1.
inline BComplex rouquier_negative(int n, int i) {
  BimoduleMap f = mult_map(n, i);
  f.source = share(bs_bimodule(n, i).shifted(-1));
  f.target = share(identity_bimodule(n).shifted(-2));
  f.degree = 0;
  return two_term(f, 0);
}

/// S concentrated in degree 0.
inline BComplex unit_complex(int n) {
  BComplex c;
  c.n = n;
  c.lo = 0;
  c.terms = {share(identity_bimodule(n))};
  c.blocks = {{Block{{0}, {}}}};
  return c;
}

/// Layout of a term of C (x) D: the pairs (a, b) with a + b = k, by increasing a.
struct TensorLayout {
  struct Part {
    int a, b, offset, rank_c, rank_d;
  };
  std::vector<std::vector<Part>> parts;  // per term of the product
};

inline TensorLayout tensor_layout(const BComplex& C, const BComplex& D) {
  TensorLayout L;
  if (C.empty() || D.empty()) return L;
  int lo = C.lo + D.lo, hi = C.hi() + D.hi();
  L.parts.resize(hi - lo + 1);
  for (int k = lo; k <= hi; ++k) {
    int off = 0;
    for (int a = C.lo; a <= C.hi(); ++a) {
      int b = k - a;
      if (!D.has(b)) continue;
      int rc = C.term(a).rank(), rd = D.term(b).rank();
      L.parts[k - lo].push_back({a, b, off, rc, rd});
      off += rc * rd;
    }
  }
  return L;
}

/// C (x)_S D with differential d_C (x) 1 + (-1)^a 1 (x) d_D on C^a (x) D^b.
inline BComplex tensor(const BComplex& C, const BComplex& D) {
  if (C.n != D.n) throw std::invalid_argument("tensor: mismatched strand count");
  BComplex T;
  T.n = C.n;
  if (C.empty() || D.empty()) return T;
  TensorLayout L = tensor_layout(C, D);
  T.lo = C.lo + D.lo;
  int nt = static_cast<int>(L.parts.size());
  // pieces M^a (x) N^b
  std::map<std::pair<int, int>, std::shared_ptr<const Bimodule>> piece;
  for (const auto& ps : L.parts)
    for (const auto& p : ps) piece[{p.a, p.b}] = share(tensor_over_S(C.term(p.a), D.term(p.b)));
  for (int t = 0; t < nt; ++t) {
    std::vector<const Bimodule*> parts;
    std::vector<Block> blocks;
    for (const auto& p : L.parts[t]) {
      parts.push_back(piece[{p.a, p.b}].get());
      for (const auto& bc : C.blocks[p.a - C.lo])
        for (const auto& bd : D.blocks[p.b - D.lo]) {
          Block b;
          for (int ga : bc.gens)
            for (int gd : bd.gens) b.gens.push_back(p.offset + ga * p.rank_d + gd);
          b.tuple = bc.tuple;
          b.tuple.insert(b.tuple.end(), bd.tuple.begin(), bd.tuple.end());
          blocks.push_back(std::move(b));
        }
    }
    T.terms.push_back(share(detail::direct_sum(parts, T.n)));
    T.blocks.push_back(std::move(blocks));
  }
  for (int t = 0; t + 1 < nt; ++t) {
    const auto& src = T.terms[t];
    const auto& tgt = T.terms[t + 1];
    BimoduleMap f = detail::zero_map(src, tgt);
    for (const auto& p : L.parts[t]) {
      // d_C (x) 1 into (a+1, b)
      for (const auto& q : L.parts[t + 1]) {
        if (q.a == p.a + 1 && q.b == p.b && C.has(p.a + 1)) {
          BimoduleMap id_d = identity_map(D.term_ptr(p.b));
          BimoduleMap m = map_tensor(C.diff(p.a), id_d, piece[{p.a, p.b}], piece[{q.a, q.b}]);
          detail::paste(f.matrix, m.matrix, q.offset, p.offset);
        }
        if (q.a == p.a && q.b == p.b + 1 && D.has(p.b + 1)) {
          BimoduleMap id_c = identity_map(C.term_ptr(p.a));
          BimoduleMap m = map_tensor(id_c, D.diff(p.b), piece[{p.a, p.b}], piece[{q.a, q.b}]);
          detail::paste(f.matrix, m.matrix, q.offset, p.offset, (p.a % 2 == 0) ? 1 : -1);
        }
      }
    }
    T.d.push_back(std::move(f));
  }
  return T;
}

/// (f (x) g) for degree-0 chain maps f: C -> C', g: D -> D' with C, C' (and
/// D, D') sharing their degree ranges; built on the given product complexes.
inline ChainMap tensor_maps(const ChainMap& f, const ChainMap& g, const BComplex& src, const BComplex& tgt) {
  const BComplex &C = *f.source, &D = *g.source, &C2 = *f.target, &D2 = *g.target;
  TensorLayout Ls = tensor_layout(C, D), Lt = tensor_layout(C2, D2);
  ChainMap h;
  h.source = &src;
  h.target = &tgt;
  h.lo = src.lo;
  for (int k = src.lo; k <= src.hi(); ++k) {
    BimoduleMap m = detail::zero_map(src.term_ptr(k), tgt.term_ptr(k));
    for (const auto& p : Ls.parts[k - src.lo]) {
      for (const auto& q : Lt.parts[k - tgt.lo]) {
        if (q.a != p.a || q.b != p.b) continue;
        if (!f.has(p.a) || !g.has(p.b)) continue;
        BimoduleMap fg = map_tensor(f.at(p.a), g.at(p.b), share(tensor_over_S(C.term(p.a), D.term(p.b))),
                                    share(tensor_over_S(C2.term(q.a), D2.term(q.b))));
        detail::paste(m.matrix, fg.matrix, q.offset, p.offset);
      }
    }
    h.maps.push_back(std::move(m));
  }
  return h;
}

inline ChainMap identity_chain_map(const BComplex& C) {
  ChainMap f;
  f.source = &C;
  f.target = &C;
  f.lo = C.lo;
  for (const auto& t : C.terms) f.maps.push_back(identity_map(t));
  return f;
}

inline BComplex letter_complex(int n, const BraidLetter& l) {
  return l.sign > 0 ? rouquier_positive(n, l.index) : rouquier_negative(n, l.index);
}

/// Tensor product of a sequence of complexes, left to right.
inline BComplex tensor_all(int n, const std::vector<BComplex>& factors) {
  if (factors.empty()) return unit_complex(n);
  BComplex c = factors.front();
  for (std::size_t t = 1; t < factors.size(); ++t) c = tensor(c, factors[t]);
  return c;
}

/// F(word) = F(l_1) (x) ... (x) F(l_m); the empty word gives S in degree 0.
inline BComplex rouquier(const BraidWord& w) {
  std::vector<BComplex> f;
  for (const auto& l : w.letters) f.push_back(letter_complex(w.n, l));
  return tensor_all(w.n, f);
}

/// Cone of a degree-0 chain map f: X -> Y.  C^k = X^{k+1} (+) Y^k with
/// d(x, y) = (-d_X x, f x + d_Y y).
inline BComplex cone(const ChainMap& f) {
  auto err = f.check();
  if (!err.empty()) throw std::invalid_argument("cone: " + err);
  const BComplex& X = *f.source;
  const BComplex& Y = *f.target;
  int n = X.empty() ? Y.n : X.n;
  BComplex C;
  C.n = n;
  int lo = std::min(X.empty() ? Y.lo : X.lo - 1, Y.empty() ? X.lo - 1 : Y.lo);
  int hi = std::max(X.empty() ? Y.hi() : X.hi() - 1, Y.empty() ? X.hi() - 1 : Y.hi());
  if (X.empty() && Y.empty()) return C;
  C.lo = lo;
  std::vector<int> xr, yr;
  for (int k = lo; k <= hi; ++k) {
    std::vector<const Bimodule*> parts;
    std::vector<Block> blocks;
    int off = 0;
    if (X.has(k + 1)) {
      parts.push_back(&X.term(k + 1));
      for (auto b : X.blocks[k + 1 - X.lo]) {
        for (auto& g : b.gens) g += off;
        blocks.push_back(b);
      }
      off += X.term(k + 1).rank();
    }
    xr.push_back(X.has(k + 1) ? X.term(k + 1).rank() : 0);
    if (Y.has(k)) {
      parts.push_back(&Y.term(k));
      for (auto b : Y.blocks[k - Y.lo]) {
        for (auto& g : b.gens) g += off;
        blocks.push_back(b);
      }
    }
    yr.push_back(Y.has(k) ? Y.term(k).rank() : 0);
    C.terms.push_back(share(detail::direct_sum(parts, n)));
    C.blocks.push_back(std::move(blocks));
  }
  for (int k = lo; k < hi; ++k) {
    int t = k - lo;
    BimoduleMap m = detail::zero_map(C.terms[t], C.terms[t + 1]);
    int xs = xr[t], xt = xr[t + 1];
    if (X.has(k + 1) && X.has(k + 2)) detail::paste(m.matrix, X.diff(k + 1).matrix, 0, 0, -1);
    if (X.has(k + 1) && Y.has(k + 1) && f.has(k + 1)) detail::paste(m.matrix, f.at(k + 1).matrix, xt, 0);
    if (Y.has(k) && Y.has(k + 1)) detail::paste(m.matrix, Y.diff(k).matrix, xt, xs);
    C.d.push_back(std::move(m));
  }
  return C;
}

/// Gaussian elimination on whole blocks: whenever a differential component
/// between a block of C^k and a block of C^{k+1} is an invertible scalar
/// matrix it is a bimodule isomorphism, and the pair is cancelled with
/// d' = eps - gamma phi^{-1} delta.  Pivots are taken in a deterministic order
/// (lowest degree, then first source block, then first target block).
inline BComplex gaussian_eliminate(const BComplex& C);  // defined in detail/eliminate.hpp

/// Graded Euler characteristic as a Laurent polynomial in q (internal degree),
/// truncated to internal degrees <= max_degree.
using GradedEuler = std::map<int, long>;

inline long count_monomials(int nvars, int total) {
  if (total < 0) return 0;
  if (nvars == 0) return total == 0 ? 1 : 0;
  // C(total + nvars - 1, nvars - 1)
  long r = 1;
  for (int t = 1; t < nvars; ++t) r = r * (total + t) / t;
  return r;
}

inline GradedEuler euler_characteristic(const BComplex& C, int max_degree) {
  GradedEuler e;
  int m = C.n - 1;
  for (int k = C.lo; k <= C.hi(); ++k) {
    long s = (k % 2 == 0) ? 1 : -1;
    for (int g : C.term(k).degrees)
      for (int j = g; j <= max_degree; j += 2) {
        long c = count_monomials(m, (j - g) / 2);
        if (c == 0) continue;
        e[j] += s * c;
      }
  }
  for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
  return e;
}

}  // namespace vkr

#include "vkr/detail/eliminate.hpp"
