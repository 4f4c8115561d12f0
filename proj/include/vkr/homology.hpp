#pragma once

// HOMFLY (Hochschild) and sl_N (matrix factorization) homology of Rouquier
// complexes, computed one graded piece at a time.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vkr/complex.hpp"
#include "vkr/koszul.hpp"
#include "vkr/laurent.hpp"

namespace vkr {

/// Upper bound on the internal (or collapsed) degree and the stabilization
/// margin: the number of consecutive empty degrees taken as evidence that
/// the homology has ended.  max_degree < 0 selects the automatic window.
struct DegreeWindow {
  int max_degree = -1;
  int margin = 4;
  int hard_cap = 80;

  void validate() const {
    if (max_degree >= 0 && max_degree % 2 != 0) throw std::invalid_argument("DegreeWindow: max degree must be even");
    if (margin < 1) throw std::invalid_argument("DegreeWindow: margin must be >= 1");
  }
};

/// Finitely supported (k, i, j) -> dimension.
struct TriGradedSpace {
  std::map<std::array<int, 3>, long> dims;

  void add(int k, int i, int j, long d) {
    if (d < 0) throw std::logic_error("TriGradedSpace: negative dimension");
    if (d == 0) return;
    dims[{k, i, j}] += d;
  }
  long at(int k, int i, int j) const {
    auto it = dims.find({k, i, j});
    return it == dims.end() ? 0 : it->second;
  }
  long total() const {
    long t = 0;
    for (const auto& [key, d] : dims) t += d;
    return t;
  }
  bool empty() const { return dims.empty(); }
  friend bool operator==(const TriGradedSpace&, const TriGradedSpace&) = default;

  /// sum (-1)^k a^i q^j dim
  Laurent euler() const {
    Laurent e;
    for (const auto& [key, d] : dims) e.add(key[1], key[2], key[0] % 2 == 0 ? Integer(d) : Integer(-d));
    return e;
  }
  /// sum (-1)^(k+j) q^i dim, for sl_N tables (i collapsed degree, j parity).
  Laurent sln_euler() const {
    Laurent e;
    for (const auto& [key, d] : dims) e.add(0, key[1], (key[0] + key[2]) % 2 == 0 ? Integer(d) : Integer(-d));
    return e;
  }
};

/// Homology of a complex of bimodules after applying the functor termwise,
/// organised by graded piece.  Keeps the per-term homology with lifts so
/// that maps between such complexes can be induced.
class HHComplex {
 public:
  HHComplex(std::shared_ptr<const BComplex> C, FunctorSpec f) : C_(std::move(C)), f_(f) {
    for (int k = C_->lo; k <= C_->hi(); ++k) mods_.emplace_back(C_->term_ptr(k), f_);
  }

  const BComplex& complex() const { return *C_; }
  FunctorSpec functor() const { return f_; }
  int lo() const { return C_->lo; }
  int hi() const { return C_->hi(); }
  bool has(int k) const { return C_->has(k); }
  const KoszulModule& module(int k) const { return mods_.at(k - C_->lo); }
  int exterior_max() const { return C_->n - 1; }

  /// Keys (piece labels) at a level: the internal degree j for HOMFLY, the
  /// collapsed degree g for sl_N.
  std::vector<PieceKey> keys_at(int level) const {
    std::vector<PieceKey> ks;
    if (f_.homfly())
      for (int p = 0; p <= exterior_max(); ++p) ks.emplace_back(p, level);
    else
      for (int pi = 0; pi <= 1; ++pi) ks.emplace_back(pi, level);
    return ks;
  }

  /// Spacing of levels: internal degrees are even; the collapsed sl_N degree
  /// j - (N+1)p takes both parities when N is even.
  int level_step() const { return (!f_.homfly() && f_.N % 2 == 0) ? 1 : 2; }

  /// Lowest level at which any piece can be nonzero.
  int min_level() const {
    int m = 0;
    bool any = false;
    for (int k = lo(); k <= hi(); ++k)
      for (int g : C_->term(k).degrees) {
        m = any ? std::min(m, g) : g;
        any = true;
      }
    if (!f_.homfly()) m -= (f_.N - 1) * exterior_max();
    return m;
  }

  /// Functor homology of the term C^k on one piece, with lifts.
  const HomologyAt& hh(int k, const PieceKey& key) const {
    auto ck = std::make_pair(k, key);
    auto it = hh_.find(ck);
    if (it != hh_.end()) return it->second;
    const KoszulModule& M = module(k);
    SparseMatrix in = piece_differential(M, piece_source(f_, key));
    SparseMatrix out = piece_differential(M, key);
    return hh_.emplace(ck, HomologyAt(&in, &out, piece_dim(M, key))).first->second;
  }

  /// Induced differential HH(C^k) -> HH(C^{k+1}) in lift coordinates.
  SparseMatrix dbar(int k, const PieceKey& key) const {
    if (!has(k) || !has(k + 1)) return SparseMatrix(has(k + 1) ? hh(k + 1, key).dim : 0, has(k) ? hh(k, key).dim : 0);
    return induced(C_->diff(k).matrix, *this, k, *this, k + 1, key);
  }

  /// Matrix of a left-module map f: C^k -> D^l on homology, in lift coordinates.
  /// Throws if the image of a cycle is not a cycle (f does not commute with the functor differential).
  static SparseMatrix induced(const PolyMatrix& f, const HHComplex& src, int k, const HHComplex& tgt, int l,
                              const PieceKey& key, int dj = 0) {
    const HomologyAt& hs = src.hh(k, key);
    const HomologyAt& ht = tgt.hh(l, {key.first, key.second + dj});
    SparseMatrix F = piece_map(f, src.module(k), tgt.module(l), key, dj);
    SparseMatrix r(ht.dim, hs.dim);
    for (int c = 0; c < hs.dim; ++c) r.col[c] = dense_to_sparse(ht.coordinates(F.apply(hs.lifts[c])));
    return r;
  }

  /// Dimension of the homology in the complex direction at (k, key).
  int homology_dim(int k, const PieceKey& key) const {
    if (!has(k)) return 0;
    int v = hh(k, key).dim;
    if (v == 0) return 0;
    SparseMatrix in = dbar(k - 1, key), out = dbar(k, key);
    return HomologyAt(has(k - 1) ? &in : nullptr, has(k + 1) ? &out : nullptr, v).dim;
  }

  /// Reduction at a marked point on strand 1: the quotient of HH(C^k) on
  /// `key` by the image of left multiplication by x_1 from the piece below.
  struct MarkedQuotient {
    EchelonBasis image;
    std::vector<int> free;      // coordinates not hit by a pivot of `image`
    std::map<int, int> column;  // coordinate -> position in `free`
  };

  const MarkedQuotient& marked(int k, const PieceKey& key) const {
    auto ck = std::make_pair(k, key);
    auto it = marked_.find(ck);
    if (it != marked_.end()) return it->second;
    MarkedQuotient q;
    const Bimodule& M = module(k).module();
    PieceKey below{key.first, key.second - 2};
    SparseMatrix X = induced(PolyMatrix::scalar(M.n, M.rank(), Poly::x(M.n, 1)), *this, k, *this, k, below, 2);
    for (const auto& c : X.col)
      if (!c.empty()) q.image.insert(c);
    std::vector<bool> pivot(hh(k, key).dim, false);
    for (const auto& v : q.image.vectors()) pivot[v.front().first] = true;
    for (int i = 0; i < static_cast<int>(pivot.size()); ++i)
      if (!pivot[i]) {
        q.column[i] = static_cast<int>(q.free.size());
        q.free.push_back(i);
      }
    return marked_.emplace(ck, std::move(q)).first->second;
  }

  /// d-bar on the marked quotients, C^k -> C^{k+1}.
  SparseMatrix marked_dbar(int k, const PieceKey& key) const {
    int rows = has(k + 1) ? static_cast<int>(marked(k + 1, key).free.size()) : 0;
    int cols = has(k) ? static_cast<int>(marked(k, key).free.size()) : 0;
    SparseMatrix r(rows, cols);
    if (!has(k) || !has(k + 1)) return r;
    SparseMatrix D = dbar(k, key);
    const MarkedQuotient& src = marked(k, key);
    const MarkedQuotient& tgt = marked(k + 1, key);
    for (int c = 0; c < cols; ++c) {
      SparseVec v = tgt.image.reduce(D.col[src.free[c]]);
      SparseVec w;
      for (const auto& [i, x] : v) w.emplace_back(tgt.column.at(i), x);
      r.col[c] = std::move(w);
    }
    return r;
  }

  int marked_homology_dim(int k, const PieceKey& key) const {
    if (!has(k)) return 0;
    int v = static_cast<int>(marked(k, key).free.size());
    if (v == 0) return 0;
    SparseMatrix in = marked_dbar(k - 1, key), out = marked_dbar(k, key);
    return HomologyAt(has(k - 1) ? &in : nullptr, has(k + 1) ? &out : nullptr, v).dim;
  }

  /// d-bar squares to zero on this piece.
  bool dbar_squares_to_zero(const PieceKey& key) const {
    for (int k = lo(); k + 2 <= hi(); ++k)
      if (!(dbar(k + 1, key) * dbar(k, key)).is_zero()) return false;
    return true;
  }

 private:
  std::shared_ptr<const BComplex> C_;
  FunctorSpec f_;
  std::vector<KoszulModule> mods_;
  mutable std::map<std::pair<int, PieceKey>, HomologyAt> hh_;
  mutable std::map<std::pair<int, PieceKey>, MarkedQuotient> marked_;
};

/// Reported gradings of a piece.
struct GradingRule {
  FunctorSpec f;
  int shift = 0;  // Hochschild shift: i = shift - p

  /// HOMFLY: (i, j) = (shift - p, internal degree).  sl_N: (collapsed
  /// degree, factorization parity).
  std::pair<int, int> report(const PieceKey& key) const {
    if (f.homfly()) return {shift - key.first, key.second};
    return {key.second, key.first};
  }
};

/// Hochschild shift from the braid: (n - 1 - writhe)/2, rounded down for links.
inline int hochschild_shift(const BraidWord& w) {
  int t = w.twice_alpha() - 1;
  return t >= 0 ? t / 2 : -((-t + 1) / 2);
}

struct HomologyResult {
  TriGradedSpace table;
  int level_lo = 0;   // first level computed
  int level_hi = 0;   // last level computed
  bool stabilized = false;
  bool knot = true;
  std::vector<std::string> warnings;
};

/// Degreewise sweep of any "level -> dims" computation honoring the window.
/// `step` is the spacing of levels that can carry homology; the margin is
/// counted in units of 2 internal degrees.
template <class PerLevel>
inline void sweep_levels(int lo, const DegreeWindow& win, HomologyResult& res, PerLevel&& per_level, int step = 2) {
  win.validate();
  int margin = win.margin * 2 / step;
  int last_nonzero = lo - 2;
  int empties = 0;
  int level = lo;
  res.level_lo = lo;
  for (;; level += step) {
    if (win.max_degree >= 0 && level > win.max_degree) break;
    if (win.max_degree < 0 && level > lo + win.hard_cap) {
      if (last_nonzero < lo) res.warnings.push_back("homology vanishes in every degree up to the hard cap of the automatic window");
      else res.warnings.push_back("automatic window reached the hard cap before stabilizing");
      break;
    }
    bool nonzero = per_level(level);
    if (nonzero) {
      last_nonzero = level;
      empties = 0;
    } else {
      ++empties;
    }
    res.level_hi = level;
    // empty levels only count once something has been found
    if (win.max_degree < 0 && last_nonzero >= lo && empties >= margin) break;
  }
  res.stabilized = empties >= margin;
  if (!res.stabilized) res.warnings.push_back("fewer than margin empty degrees at the top of the window");
}

inline HomologyResult complex_homology(const HHComplex& H, const GradingRule& rule, const DegreeWindow& win,
                                       bool marked = false) {
  HomologyResult res;
  sweep_levels(H.min_level(), win, res, [&](int level) {
    bool any = false;
    for (const auto& key : H.keys_at(level))
      for (int k = H.lo(); k <= H.hi(); ++k) {
        int d = marked ? H.marked_homology_dim(k, key) : H.homology_dim(k, key);
        if (d == 0) continue;
        auto [i, j] = rule.report(key);
        res.table.add(k, i, j, d);
        any = true;
      }
    return any;
  }, H.level_step());
  return res;
}

struct HomologyOptions {
  DegreeWindow window;
  bool simplify = true;
};

inline std::shared_ptr<const BComplex> prepared_complex(const BraidWord& w, bool simplify) {
  BComplex C = rouquier(w);
  if (simplify) C = gaussian_eliminate(C);
  return std::make_shared<const BComplex>(std::move(C));
}

inline HomologyResult homfly_homology(const BraidWord& w, const HomologyOptions& opt = {}) {
  HHComplex H(prepared_complex(w, opt.simplify), FunctorSpec{});
  HomologyResult r = complex_homology(H, GradingRule{FunctorSpec{}, hochschild_shift(w)}, opt.window);
  r.knot = w.is_knot();
  if (!r.knot) r.warnings.push_back("closure is a link: homology may be infinite dimensional, truncation may be lossy");
  return r;
}

/// The braid on one extra, untouched strand: its Rouquier complex lives over
/// Q[x_1..x_n], the ring the sl_N functor needs.
inline BraidWord unreduced_lift(const BraidWord& w) {
  BraidWord u = w;
  u.n = w.n + 1;
  return u;
}

inline HomologyResult sln_homology(const BraidWord& w, int N, const HomologyOptions& opt = {}) {
  if (N < 1) throw std::invalid_argument("sln_homology: N must be >= 1");
  FunctorSpec f{N};
  HHComplex H(prepared_complex(unreduced_lift(w), opt.simplify), f);
  HomologyResult r = complex_homology(H, GradingRule{f, 0}, opt.window, true);
  r.knot = w.is_knot();
  if (!r.knot) r.warnings.push_back("closure is a link: homology may be infinite dimensional, truncation may be lossy");
  return r;
}

/// HH_p(M)_j for a single bimodule, j <= max_degree: map (p, j) -> dim.
inline std::map<std::pair<int, int>, int> hochschild_bimodule(std::shared_ptr<const Bimodule> M, int max_degree) {
  if (max_degree % 2 != 0) throw std::invalid_argument("hochschild_bimodule: max degree must be even");
  KoszulModule K(std::move(M), FunctorSpec{});
  std::map<std::pair<int, int>, int> table;
  int lo = max_degree;
  for (int g : K.module().degrees) lo = std::min(lo, g);
  for (int j = lo; j <= max_degree; j += 2)
    for (int p = 0; p <= K.exterior_max(); ++p) {
      PieceKey key{p, j};
      SparseMatrix in = piece_differential(K, piece_source(K.spec(), key));
      SparseMatrix out = piece_differential(K, key);
      int d = HomologyAt(&in, &out, piece_dim(K, key)).dim;
      if (d) table[{p, j}] = d;
    }
  return table;
}

}  // namespace vkr
