#pragma once

// Koszul resolutions and Koszul matrix factorizations tensored with a
// bimodule, evaluated one graded piece at a time.
//
// For a bimodule M (free over its left ring on generators g_a) the complex
// K (x) M has terms  (+)_{|J|=p} M e_J,  J a subset of the free variables,
// where e_J has internal degree 2|J|.  The Koszul differential contracts with
// phi_l = x_l - (right x_l).  The sl_N deformation adds the wedge with
// psi_l = (x_l^{N+1} - y_l^{N+1})/(x_l - y_l).  The sl_N functor is applied
// to bimodules over the free ring Q[x_1..x_n], which is represented as the
// quotient ring on n+1 strands with strand n+1 left untouched; then
// sum_l phi_l psi_l is the potential sum_{l<=n} (x_l^{N+1} - y_l^{N+1}).

#include <bit>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vkr/bimodule.hpp"
#include "vkr/linalg.hpp"

namespace vkr {

/// Subsets of {0..m-1} as bitmasks, grouped by size, each group in increasing order.
inline std::vector<std::vector<unsigned>> subsets_by_size(int m) {
  std::vector<std::vector<unsigned>> s(m + 1);
  for (unsigned mask = 0; mask < (1u << m); ++mask) s[std::popcount(mask)].push_back(mask);
  return s;
}

/// Sign of e_l inserted into (or removed from) e_J: (-1)^{#{m in J : m < l}}.
inline int wedge_sign(unsigned J, int l) { return (std::popcount(J & ((1u << l) - 1)) % 2) ? -1 : 1; }

/// Which homology functor a computation uses: HOMFLY (Hochschild homology,
/// Koszul differential only) or sl_N (Koszul matrix factorization).
struct FunctorSpec {
  int N = 0;  // 0 means HOMFLY; otherwise sl_N with N >= 1
  bool homfly() const { return N == 0; }
};

/// Key of a graded piece.  HOMFLY: (p, j) = (Hochschild degree, internal
/// degree).  sl_N: (parity of p, collapsed grading g = j - (N+1) p).
using PieceKey = std::pair<int, int>;

/// Polynomial x_l - right(x_l) as an endomorphism matrix of M, l = 1..n-1.
inline PolyMatrix phi_matrix(const Bimodule& M, int l) {
  return PolyMatrix::scalar(M.n, M.rank(), Poly::x(M.n, l)) - M.right[l - 1];
}

/// psi'_l = psi_l - psi_n in S (x) S for the sl_N potential.
inline Poly psi_prime(int n, int l, int N) { return psi_quotient(n, l, N + 1) - psi_quotient(n, n, N + 1); }

/// M together with the data needed to write down its Koszul pieces.
class KoszulModule {
 public:
  KoszulModule(std::shared_ptr<const Bimodule> m, FunctorSpec spec)
      : m_(std::move(m)), spec_(spec), nv_(m_->n - 1), subsets_(subsets_by_size(nv_)), index_(nv_, 0) {
    for (int l = 1; l <= nv_; ++l) phi_.push_back(phi_matrix(*m_, l));
    if (!spec_.homfly()) {
      RightEvaluator ev(*m_);
      for (int l = 1; l <= nv_; ++l) psi_.push_back(ev.eval_two_sided(psi_quotient(m_->n, l, spec_.N + 1)));
    }
  }

  const Bimodule& module() const { return *m_; }
  std::shared_ptr<const Bimodule> module_ptr() const { return m_; }
  int exterior_max() const { return nv_; }
  FunctorSpec spec() const { return spec_; }

  /// Layout of V(p, j): per (J, a) the offset of its monomial block.
  struct Layout {
    int dim = 0;
    std::vector<std::pair<unsigned, int>> blocks;  // (J, a)
    std::vector<int> offsets;
    std::vector<int> mdeg;                         // monomial total degree per block
  };

  const Layout& layout(int p, int j) const {
    auto key = std::make_pair(p, j);
    auto it = layouts_.find(key);
    if (it != layouts_.end()) return it->second;
    Layout L;
    if (p >= 0 && p <= nv_) {
      for (unsigned J : subsets_[p])
        for (int a = 0; a < m_->rank(); ++a) {
          int rest = j - m_->degrees[a] - 2 * p;
          if (rest < 0 || rest % 2 != 0) continue;
          long cnt = count(rest / 2);
          if (cnt == 0) continue;
          L.blocks.emplace_back(J, a);
          L.offsets.push_back(L.dim);
          L.mdeg.push_back(rest / 2);
          L.dim += static_cast<int>(cnt);
        }
    }
    return layouts_.emplace(key, std::move(L)).first->second;
  }

  int dim(int p, int j) const { return layout(p, j).dim; }

  /// Index of the basis element mu * g_a * e_J in V(p, j), or -1.
  int index_of(int p, int j, unsigned J, int a, const Exponents& mu) const {
    const Layout& L = layout(p, j);
    for (std::size_t b = 0; b < L.blocks.size(); ++b)
      if (L.blocks[b].first == J && L.blocks[b].second == a) return L.offsets[b] + static_cast<int>(rank(mu));
    return -1;
  }

  /// Koszul differential V(p, j) -> V(p-1, j).
  SparseMatrix minus(int p, int j) const {
    const Layout& S = layout(p, j);
    const Layout& T = layout(p - 1, j);
    SparseMatrix D(T.dim, S.dim);
    for (std::size_t b = 0; b < S.blocks.size(); ++b) {
      auto [J, a] = S.blocks[b];
      for (int l = 0; l < nv_; ++l) {
        if (!(J & (1u << l))) continue;
        unsigned J2 = J & ~(1u << l);
        add_poly_column(D, S, b, phi_[l], a, T, J2, wedge_sign(J, l));
      }
    }
    return D;
  }

  /// Matrix-factorization part V(p, j) -> V(p+1, j + 2N + 2).
  SparseMatrix plus(int p, int j) const {
    if (spec_.homfly()) throw std::logic_error("KoszulModule::plus: HOMFLY functor has no d_+");
    int j2 = j + 2 * spec_.N + 2;
    const Layout& S = layout(p, j);
    const Layout& T = layout(p + 1, j2);
    SparseMatrix D(T.dim, S.dim);
    for (std::size_t b = 0; b < S.blocks.size(); ++b) {
      auto [J, a] = S.blocks[b];
      for (int l = 0; l < nv_; ++l) {
        if (J & (1u << l)) continue;
        add_poly_column(D, S, b, psi_[l], a, T, J | (1u << l), wedge_sign(J, l));
      }
    }
    return D;
  }

  /// A left-module map f: M -> target of internal degree dj (matrix of
  /// polynomials), applied on every e_J; V(p, j) -> V_target(p, j + dj).
  SparseMatrix apply(const PolyMatrix& f, const KoszulModule& target, int p, int j, int dj = 0) const {
    const Layout& S = layout(p, j);
    const Layout& T = target.layout(p, j + dj);
    SparseMatrix D(T.dim, S.dim);
    for (std::size_t b = 0; b < S.blocks.size(); ++b) {
      auto [J, a] = S.blocks[b];
      target.add_poly_column_from(D, S, b, *this, f, a, T, J, 1);
    }
    return D;
  }

  long count(int total) const { return count_monomials_cached(total); }
  long rank(const Exponents& e) const { return index_for(Poly::total_degree(e)).rank(e); }

  const std::vector<Exponents>& monomials(int total) const {
    auto it = monos_.find(total);
    if (it != monos_.end()) return it->second;
    return monos_.emplace(total, monomials_of_degree(nv_, total)).first->second;
  }

 private:
  long count_monomials_cached(int total) const {
    if (total < 0) return 0;
    return static_cast<long>(monomials(total).size());
  }
  const MonomialIndex& index_for(int total) const {
    if (total > index_max_) {
      index_max_ = std::max(total, 2 * index_max_ + 8);
      index_ = MonomialIndex(nv_, index_max_);
    }
    return index_;
  }

  // Column images of the block b of `S` under the polynomial matrix P
  // (rows indexed by generators of this module), landing in exterior
  // index J2 of layout T of this module.
  void add_poly_column(SparseMatrix& D, const Layout& S, std::size_t b, const PolyMatrix& P, int a,
                       const Layout& T, unsigned J2, int sign) const {
    add_poly_column_from(D, S, b, *this, P, a, T, J2, sign);
  }

 public:
  // Same with the source layout belonging to `src` and P mapping src generators to ours.
  void add_poly_column_from(SparseMatrix& D, const Layout& S, std::size_t b, const KoszulModule& src,
                            const PolyMatrix& P, int a, const Layout& T, unsigned J2, int sign) const {
    int deg = S.mdeg[b];
    const auto& mons = src.monomials(deg);
    // target blocks for (J2, a2)
    for (int a2 = 0; a2 < m_->rank(); ++a2) {
      const Poly& entry = P(a2, a);
      if (entry.is_zero()) continue;
      int tb = -1;
      for (std::size_t t = 0; t < T.blocks.size(); ++t)
        if (T.blocks[t].first == J2 && T.blocks[t].second == a2) {
          tb = static_cast<int>(t);
          break;
        }
      if (tb < 0) continue;  // degree bookkeeping guarantees this only for zero entries
      for (std::size_t mi = 0; mi < mons.size(); ++mi) {
        int col = S.offsets[b] + static_cast<int>(mi);
        auto& column = D.col[col];
        std::map<int, Rational> acc;
        for (const auto& [i, c] : column) acc.emplace(i, c);
        Exponents e(nv_);
        for (const auto& [pe, pc] : entry.terms()) {
          for (int t = 0; t < nv_; ++t) e[t] = mons[mi][t] + pe[t];
          int row = T.offsets[tb] + static_cast<int>(rank(e));
          acc[row] += sign > 0 ? pc : Rational(-pc);
        }
        column = to_sparse(acc);
      }
    }
  }

 private:
  std::shared_ptr<const Bimodule> m_;
  FunctorSpec spec_;
  int nv_;
  std::vector<std::vector<unsigned>> subsets_;
  std::vector<PolyMatrix> phi_, psi_;
  mutable std::map<std::pair<int, int>, Layout> layouts_;
  mutable std::map<int, std::vector<Exponents>> monos_;
  mutable int index_max_ = 0;
  mutable MonomialIndex index_;
};

/// The constituents (p, j) of a graded piece.
inline std::vector<std::pair<int, int>> piece_parts(const FunctorSpec& f, int nv, const PieceKey& key) {
  std::vector<std::pair<int, int>> parts;
  if (f.homfly()) {
    if (key.first >= 0 && key.first <= nv) parts.emplace_back(key.first, key.second);
  } else {
    for (int p = key.first; p <= nv; p += 2) parts.emplace_back(p, key.second + (f.N + 1) * p);
  }
  return parts;
}

/// Key of the piece the differential lands in.
inline PieceKey piece_target(const FunctorSpec& f, const PieceKey& key) {
  if (f.homfly()) return {key.first - 1, key.second};
  return {1 - key.first, key.second + f.N + 1};
}
inline PieceKey piece_source(const FunctorSpec& f, const PieceKey& key) {
  if (f.homfly()) return {key.first + 1, key.second};
  return {1 - key.first, key.second - f.N - 1};
}

inline int piece_dim(const KoszulModule& M, const PieceKey& key) {
  int d = 0;
  for (auto [p, j] : piece_parts(M.spec(), M.exterior_max(), key)) d += M.dim(p, j);
  return d;
}

namespace detail {
inline void paste_sparse(SparseMatrix& big, const SparseMatrix& small, int r0, int c0) {
  for (int j = 0; j < small.cols; ++j) {
    if (small.col[j].empty()) continue;
    SparseVec shifted;
    for (const auto& [i, c] : small.col[j]) shifted.emplace_back(r0 + i, c);
    big.col[c0 + j] = axpy(big.col[c0 + j], 1, shifted);
  }
}
}  // namespace detail

/// The differential of the homology functor on the piece `key`.
inline SparseMatrix piece_differential(const KoszulModule& M, const PieceKey& key) {
  const FunctorSpec f = M.spec();
  int nv = M.exterior_max();
  PieceKey tk = piece_target(f, key);
  auto sp = piece_parts(f, nv, key), tp = piece_parts(f, nv, tk);
  SparseMatrix D(piece_dim(M, tk), piece_dim(M, key));
  auto offset_of = [&](const std::vector<std::pair<int, int>>& parts, std::pair<int, int> pj) {
    int off = 0;
    for (auto q : parts) {
      if (q == pj) return off;
      off += M.dim(q.first, q.second);
    }
    return -1;
  };
  int so = 0;
  for (auto [p, j] : sp) {
    int to = offset_of(tp, {p - 1, j});
    if (to >= 0 && p >= 1) detail::paste_sparse(D, M.minus(p, j), to, so);
    if (!f.homfly() && p < nv) {
      int to2 = offset_of(tp, {p + 1, j + 2 * f.N + 2});
      if (to2 >= 0) detail::paste_sparse(D, M.plus(p, j), to2, so);
    }
    so += M.dim(p, j);
  }
  return D;
}

/// A left-module map of internal degree dj between Koszul modules, from the
/// piece `key` to the piece `key` shifted by dj.
inline SparseMatrix piece_map(const PolyMatrix& f, const KoszulModule& src, const KoszulModule& tgt,
                              const PieceKey& key, int dj = 0) {
  auto parts = piece_parts(src.spec(), src.exterior_max(), key);
  PieceKey tkey{key.first, key.second + dj};
  SparseMatrix D(piece_dim(tgt, tkey), piece_dim(src, key));
  int so = 0, to = 0;
  for (auto [p, j] : parts) {
    detail::paste_sparse(D, src.apply(f, tgt, p, j, dj), to, so);
    so += src.dim(p, j);
    to += tgt.dim(p, j + dj);
  }
  return D;
}

/// Symbolic Koszul matrix factorization over S (x) S: exterior basis e_J on
/// {1..n-1}, d_- contracts with phi_l and d_+ wedges with psi'_l.
struct MatrixFactorization {
  int n = 1;
  int N = 1;
  Poly potential;
  std::vector<unsigned> basis;                 // all subsets, by size then value
  std::vector<std::vector<Poly>> d_plus, d_minus;  // [row][col]

  /// (d_+ + d_-)^2 - potential * Id, entrywise zero?
  bool squares_to_potential() const {
    std::size_t r = basis.size();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) {
        Poly s(n, Side::TwoSided);
        for (std::size_t t = 0; t < r; ++t) {
          Poly a = d_plus[i][t] + d_minus[i][t];
          Poly b = d_plus[t][k] + d_minus[t][k];
          if (!a.is_zero() && !b.is_zero()) s += a * b;
        }
        if (i == k) s -= potential;
        if (!s.is_zero()) return false;
      }
    return true;
  }
};

namespace detail {
// Koszul factorization on `m` pairs over the quotient ring on `ring_n` strands.
inline MatrixFactorization koszul_factorization(int ring_n, int m, int N, bool subtract_last) {
  if (N < 1) throw std::invalid_argument("z_factorization: N must be >= 1");
  int n = ring_n;
  MatrixFactorization z;
  z.n = n;
  z.N = N;
  for (const auto& group : subsets_by_size(m)) z.basis.insert(z.basis.end(), group.begin(), group.end());
  std::size_t r = z.basis.size();
  std::map<unsigned, std::size_t> pos;
  for (std::size_t t = 0; t < r; ++t) pos[z.basis[t]] = t;
  Poly zero(n, Side::TwoSided);
  z.d_plus.assign(r, std::vector<Poly>(r, zero));
  z.d_minus = z.d_plus;
  for (std::size_t c = 0; c < r; ++c) {
    unsigned J = z.basis[c];
    for (int l = 0; l < m; ++l) {
      int s = wedge_sign(J, l);
      Poly psi = subtract_last ? psi_prime(n, l + 1, N) : psi_quotient(n, l + 1, N + 1);
      if (J & (1u << l)) z.d_minus[pos[J & ~(1u << l)]][c] += phi(n, l + 1) * Rational(s);
      else z.d_plus[pos[J | (1u << l)]][c] += psi * Rational(s);
    }
  }
  z.potential = Poly(n, Side::TwoSided);
  int last = subtract_last ? n : m;
  for (int i = 1; i <= last; ++i)
    z.potential += Poly::x(n, i, Side::TwoSided).pow(N + 1) - Poly::y(n, i).pow(N + 1);
  return z;
}
}  // namespace detail

/// Z over S (x) S with S = Q[x_1..x_n]/(x_1+...+x_n): n-1 pairs (phi_l, psi_l - psi_n)
/// whose potential is sum_{i<=n} (x_i^{N+1} - y_i^{N+1}) written in canonical coordinates.
inline MatrixFactorization z_factorization(int n, int N) { return detail::koszul_factorization(n, n - 1, N, true); }

/// Z over Q[x_1..x_n] (x) Q[x_1..x_n]: n pairs (phi_i, psi_i), potential
/// sum_{i<=n} (x_i^{N+1} - y_i^{N+1}).  This is the factorization the sl_N functor uses.
inline MatrixFactorization unreduced_z_factorization(int n, int N) {
  return detail::koszul_factorization(n + 1, n, N, false);
}

}  // namespace vkr
