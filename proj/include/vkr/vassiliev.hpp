#pragma once

// Homology of singular braids: the cube of resolutions of the singular
// letters, with functor homology at the vertices and wall-crossing maps on
// the edges, totalized either directly or as iterated cones.

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vkr/braid.hpp"
#include "vkr/homology.hpp"
#include "vkr/wallcross.hpp"

namespace vkr {

struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// A finite complex of vector spaces, d[T]: C^T -> C^{T+1}.
struct LinearComplex {
  std::map<int, int> dim;
  std::map<int, SparseMatrix> d;

  int at(int T) const {
    auto it = dim.find(T);
    return it == dim.end() ? 0 : it->second;
  }
  SparseMatrix diff(int T) const {
    auto it = d.find(T);
    if (it != d.end()) return it->second;
    return SparseMatrix(at(T + 1), at(T));
  }
  bool squares_to_zero() const {
    for (const auto& [T, m] : d) {
      auto nx = d.find(T + 1);
      if (nx != d.end() && !(nx->second * m).is_zero()) return false;
    }
    return true;
  }
  std::map<int, int> homology() const {
    std::map<int, int> h;
    for (const auto& [T, v] : dim) {
      if (v == 0) continue;
      SparseMatrix in = diff(T - 1), out = diff(T);
      int r = HomologyAt(&in, &out, v).dim;
      if (r) h[T] = r;
    }
    return h;
  }
};

/// Sign behavior of the cube, measured on the data.
struct CubeSigns {
  int wall_vs_dbar = 0;  // +1 commute, -1 anticommute, 0 nothing nonzero seen
  int faces = 0;         // same for W_u W_t against W_t W_u
  bool consistent = true;
};

struct VassilievOptions {
  HomologyOptions homology;
  std::vector<int> order;       // cone order (0-based singular letters); empty: direct total complex
  std::vector<Rational> scales;  // per singular letter; empty means all 1
};

class VassilievCube {
 public:
  /// `N` = 0 for the HOMFLY functor.
  VassilievCube(const SingularBraidWord& w, int N, std::vector<Rational> scales = {})
      : word_(w), f_{N}, m_(w.singular_count()) {
    if (N < 0) throw std::invalid_argument("VassilievCube: N must be >= 0");
    if (m_ > 12) throw std::invalid_argument("VassilievCube: too many singular letters");
    if (scales.empty()) scales.assign(m_, Rational(1));
    if (static_cast<int>(scales.size()) != m_) throw std::invalid_argument("VassilievCube: one scale per singular letter");
    for (const auto& s : scales)
      if (s == 0) throw std::invalid_argument("VassilievCube: scales must be nonzero");
    positions_ = w.singular_positions();
    ring_n_ = f_.homfly() ? w.n : w.n + 1;
    int V = 1 << m_;
    for (int v = 0; v < V; ++v) {
      BraidWord b = w.resolve(signs_of(v));
      b.n = ring_n_;
      vertex_.push_back(std::make_unique<HHComplex>(std::make_shared<const BComplex>(rouquier(b)), f_));
      BraidWord orig = w.resolve(signs_of(v));
      shift_.push_back(hochschild_shift(orig));
    }
    for (int v = 0; v < V; ++v)
      for (int t = 0; t < m_; ++t) {
        if (v >> t & 1) continue;
        auto letters = letter_complexes(v);
        auto wall = std::make_shared<const Wall>(ring_n_, letters, positions_[t],
                                                 w.letters[positions_[t]].index, scales[t]);
        auto wc = std::make_unique<WallCrossing>(wall, *vertex_[v], *vertex_[v | 1 << t]);
        edges_.emplace(std::make_pair(v, t), std::make_pair(wall, std::move(wc)));
      }
  }

  int singular_count() const { return m_; }
  int vertices() const { return 1 << m_; }
  const FunctorSpec& functor() const { return f_; }
  /// Bit t of a vertex set: positive resolution of singular letter t.
  static int negatives(int m, int v) { return m - std::popcount(static_cast<unsigned>(v)); }
  int negatives(int v) const { return negatives(m_, v); }
  const HHComplex& vertex(int v) const { return *vertex_.at(v); }
  const Wall& wall(int v, int t) const { return *edges_.at({v, t}).first; }
  const WallCrossing& crossing(int v, int t) const { return *edges_.at({v, t}).second; }
  BraidWord resolution(int v) const { return word_.resolve(signs_of(v)); }

  /// Hochschild shift of the all-positive resolution, used for Euler normalization.
  int positive_shift() const { return shift_.back(); }

  /// The piece of vertex v carrying the reported grading (i, j), if any.
  std::optional<PieceKey> key_of(int v, int i, int j) const {
    int neg = negatives(v);
    if (f_.homfly()) {
      int p = shift_[v] - i;
      if (p < 0 || p > vertex_[v]->exterior_max()) return std::nullopt;
      return PieceKey{p, j};
    }
    int pi = ((j - neg) % 2 + 2) % 2;
    return PieceKey{pi, i - (f_.N + 1) * neg};
  }

  /// Reported grading of a piece of vertex v; inverse of key_of.
  std::pair<int, int> report(int v, const PieceKey& key) const {
    int neg = negatives(v);
    if (f_.homfly()) return {shift_[v] - key.first, key.second};
    return {key.second + (f_.N + 1) * neg, (key.first + neg) % 2};
  }

  /// Total homological degree of term k at vertex v.
  int total_degree(int v, int k) const { return k - 2 * negatives(v); }

  /// Reported gradings at a level (HOMFLY: j, sl_N: i).
  std::vector<std::pair<int, int>> reports_at(int level) const {
    std::vector<std::pair<int, int>> r;
    for (int v = 0; v < vertices(); ++v) {
      int neg = negatives(v);
      int vl = f_.homfly() ? level : level - (f_.N + 1) * neg;
      for (const auto& key : vertex_[v]->keys_at(vl)) r.push_back(report(v, key));
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }

  int min_level() const {
    int m = 0;
    for (int v = 0; v < vertices(); ++v) {
      int l = vertex_[v]->min_level() + (f_.homfly() ? 0 : (f_.N + 1) * negatives(v));
      m = v == 0 ? l : std::min(m, l);
    }
    return m;
  }
  int level_step() const { return vertex_.front()->level_step(); }

  // Functor homology and maps, on the marked quotient for sl_N.
  int space(int v, int k, const PieceKey& key) const {
    const HHComplex& H = *vertex_[v];
    if (!H.has(k)) return 0;
    return marked() ? static_cast<int>(H.marked(k, key).free.size()) : H.hh(k, key).dim;
  }
  SparseMatrix dbar(int v, int k, const PieceKey& key) const {
    const HHComplex& H = *vertex_[v];
    return marked() ? H.marked_dbar(k, key) : H.dbar(k, key);
  }
  /// W_t from vertex v (letter t negative) at term k: lands in term k-1 of v | 2^t.
  SparseMatrix wall_map(int v, int t, int k, const PieceKey& key) const {
    const WallCrossing& W = crossing(v, t);
    if (!vertex_[v]->has(k) || !vertex_[v | 1 << t]->has(k - 1))
      return SparseMatrix(space(v | 1 << t, k - 1, W.target_key(key)), space(v, k, key));
    return marked() ? W.marked_matrix(k, key) : W.matrix(k, key);
  }

  /// Commutation behavior of d-bar with W and of the square faces, on the
  /// reported gradings of the given levels.
  CubeSigns measure_signs(int level_lo, int level_hi) const {
    CubeSigns s;
    auto note = [&](int& slot, const SparseMatrix& a, const SparseMatrix& b) {
      if (a.is_zero() && b.is_zero()) return;
      int r = a == b ? 1 : a == b.scaled_by(-1) ? -1 : 0;
      if (r == 0 || (slot != 0 && slot != r)) s.consistent = false;
      if (r != 0 && slot == 0) slot = r;
    };
    for (int level = level_lo; level <= level_hi; level += level_step())
      for (auto [i, j] : reports_at(level))
        for (int v = 0; v < vertices(); ++v) {
          auto key = key_of(v, i, j);
          if (!key) continue;
          const HHComplex& H = *vertex_[v];
          for (int k = H.lo(); k <= H.hi(); ++k)
            for (int t = 0; t < m_; ++t) {
              if (v >> t & 1) continue;
              int w = v | 1 << t;
              PieceKey tk = crossing(v, t).target_key(*key);
              if (H.has(k + 1)) note(s.wall_vs_dbar, wall_map(v, t, k + 1, *key) * dbar(v, k, *key),
                                     dbar(w, k - 1, tk) * wall_map(v, t, k, *key));
              for (int u = t + 1; u < m_; ++u) {
                if (v >> u & 1) continue;
                int vu = v | 1 << u;
                PieceKey ku = crossing(v, u).target_key(*key);
                SparseMatrix tu = wall_map(w, u, k - 1, tk) * wall_map(v, t, k, *key);
                SparseMatrix ut = wall_map(vu, t, k - 1, ku) * wall_map(v, u, k, *key);
                note(s.faces, tu, ut);
              }
            }
        }
    return s;
  }

  /// Total complex on the reported grading (i, j).  `order` empty: direct
  /// sum over the cube; otherwise iterated cones, order[0] innermost.
  LinearComplex total(int i, int j, const std::vector<int>& order = {}) const {
    Layout L;
    if (order.empty()) {
      L = direct(i, j);
    } else {
      std::vector<int> o = order;
      std::vector<int> sorted = o;
      std::sort(sorted.begin(), sorted.end());
      for (int t = 0; t < m_; ++t)
        if (static_cast<int>(sorted.size()) != m_ || sorted[t] != t)
          throw std::invalid_argument("cone order must be a permutation of the singular letters");
      L = cones(i, j, o, 0, o.size());
    }
    if (!L.c.squares_to_zero()) throw InvariantViolation("total complex: d^2 != 0");
    return L.c;
  }

 private:
  bool marked() const { return !f_.homfly(); }

  std::vector<int> signs_of(int v) const {
    std::vector<int> s(m_);
    for (int t = 0; t < m_; ++t) s[t] = (v >> t & 1) ? 1 : -1;
    return s;
  }

  /// Letter complexes for vertex v with the singular letter t left as a placeholder.
  std::vector<BComplex> letter_complexes(int v) const {
    BraidWord b = word_.resolve(signs_of(v));
    std::vector<BComplex> out;
    for (const auto& l : b.letters) out.push_back(letter_complex(ring_n_, l));
    return out;
  }

  // A totalized subcube: blocks (vertex, k) listed per total degree.
  struct Layout {
    LinearComplex c;
    std::map<int, std::vector<std::pair<int, int>>> blocks;  // T -> (v, k)
    int offset(int T, std::pair<int, int> b, int i, int j, const VassilievCube& cube) const {
      int off = 0;
      for (const auto& x : blocks.at(T)) {
        if (x == b) return off;
        off += cube.space(x.first, x.second, *cube.key_of(x.first, i, j));
      }
      throw std::logic_error("layout: missing block");
    }
  };

  void add_blocks(Layout& L, int v, int i, int j) const {
    auto key = key_of(v, i, j);
    if (!key) return;
    const HHComplex& H = *vertex_[v];
    for (int k = H.lo(); k <= H.hi(); ++k) {
      int s = space(v, k, *key);
      if (s == 0) continue;
      int T = total_degree(v, k);
      L.blocks[T].emplace_back(v, k);
      L.c.dim[T] += s;
    }
  }

  void init_diffs(Layout& L) const {
    for (const auto& [T, b] : L.blocks) L.c.d[T] = SparseMatrix(L.c.at(T + 1), L.c.at(T));
  }

  // paste d-bar and W blocks of the listed vertices with a sign per piece
  template <class SignD, class SignW>
  void paste_cube(Layout& L, int i, int j, const std::vector<int>& verts, const std::vector<int>& dirs, SignD sd,
                  SignW sw) const {
    std::vector<bool> in(vertices(), false);
    for (int v : verts) in[v] = true;
    for (const auto& [T, list] : L.blocks)
      for (auto [v, k] : list) {
        PieceKey key = *key_of(v, i, j);
        int so = L.offset(T, {v, k}, i, j, *this);
        SparseMatrix& D = L.c.d[T];
        auto put = [&](const SparseMatrix& M, int tv, int tk, int sign) {
          if (M.is_zero()) return;
          auto it = L.blocks.find(T + 1);
          if (it == L.blocks.end()) throw InvariantViolation("total complex: map into a missing degree");
          int to = L.offset(T + 1, {tv, tk}, i, j, *this);
          detail::paste_sparse(D, sign > 0 ? M : M.scaled_by(-1), to, so);
        };
        if (space(v, k + 1, key) > 0) put(dbar(v, k, key), v, k + 1, sd(v));
        for (int t : dirs) {
          if (v >> t & 1) continue;
          int w = v | 1 << t;
          if (!in[w]) continue;
          PieceKey tk = crossing(v, t).target_key(key);
          if (space(w, k - 1, tk) == 0) continue;
          put(wall_map(v, t, k, key), w, k - 1, sw(v, t));
        }
      }
  }

  Layout direct(int i, int j) const {
    Layout L;
    std::vector<int> verts(vertices()), dirs(m_);
    std::iota(verts.begin(), verts.end(), 0);
    std::iota(dirs.begin(), dirs.end(), 0);
    for (int v : verts) add_blocks(L, v, i, j);
    init_diffs(L);
    paste_cube(
        L, i, j, verts, dirs, [](int v) { return std::popcount(static_cast<unsigned>(v)) % 2 ? -1 : 1; },
        [](int v, int t) { return std::popcount(static_cast<unsigned>(v & ((1 << t) - 1))) % 2 ? -1 : 1; });
    return L;
  }

  // Cone over order[hi-1] of the cones over order[lo..hi-1), on the
  // subcube where the remaining letters are fixed by `base`.
  Layout cones(int i, int j, const std::vector<int>& order, int base, std::size_t count) const {
    if (count == 0) {
      Layout L;
      add_blocks(L, base, i, j);
      init_diffs(L);
      paste_cube(L, i, j, {base}, {}, [](int) { return 1; }, [](int, int) { return 1; });
      return L;
    }
    int t = order[count - 1];
    Layout X = cones(i, j, order, base, count - 1);
    Layout Y = cones(i, j, order, base | 1 << t, count - 1);
    Layout C;
    std::set<int> degrees;
    for (const auto& [T, b] : X.blocks) degrees.insert(T);
    for (const auto& [T, b] : Y.blocks) degrees.insert(T);
    for (int T : degrees) {
      auto& list = C.blocks[T];
      if (X.blocks.count(T)) list = X.blocks.at(T);
      if (Y.blocks.count(T)) list.insert(list.end(), Y.blocks.at(T).begin(), Y.blocks.at(T).end());
      C.c.dim[T] = X.c.at(T) + Y.c.at(T);
    }
    init_diffs(C);
    for (int T : degrees) {
      SparseMatrix& D = C.c.d[T];
      int xs = X.c.at(T), xt = X.c.at(T + 1);
      if (X.c.d.count(T)) detail::paste_sparse(D, X.c.d.at(T), 0, 0);
      if (Y.c.d.count(T)) detail::paste_sparse(D, Y.c.d.at(T).scaled_by(-1), xt, xs);
      // f: X -> Y, block diagonal W_t
      if (!X.blocks.count(T)) continue;
      for (auto [v, k] : X.blocks.at(T)) {
        PieceKey key = *key_of(v, i, j);
        int w = v | 1 << t;
        PieceKey tk = crossing(v, t).target_key(key);
        if (space(w, k - 1, tk) == 0) continue;
        SparseMatrix M = wall_map(v, t, k, key);
        if (M.is_zero()) continue;
        int so = X.offset(T, {v, k}, i, j, *this);
        int to = xt + Y.offset(T + 1, {w, k - 1}, i, j, *this);
        detail::paste_sparse(D, M, to, so);
      }
    }
    return C;
  }

  SingularBraidWord word_;
  FunctorSpec f_;
  int m_;
  int ring_n_ = 1;
  std::vector<int> positions_;
  std::vector<std::unique_ptr<HHComplex>> vertex_;
  std::vector<int> shift_;
  std::map<std::pair<int, int>, std::pair<std::shared_ptr<const Wall>, std::unique_ptr<WallCrossing>>> edges_;
};

struct VassilievResult {
  HomologyResult homology;
  CubeSigns signs;
  int positive_shift = 0;
};

/// Homology of the totalized cube over the degree window.  N = 0 is HOMFLY.
inline VassilievResult vassiliev_homology(const SingularBraidWord& w, int N, const VassilievOptions& opt = {}) {
  VassilievCube cube(w, N, opt.scales);
  VassilievResult r;
  r.positive_shift = cube.positive_shift();
  sweep_levels(cube.min_level(), opt.homology.window, r.homology, [&](int level) {
    bool any = false;
    for (auto [i, j] : cube.reports_at(level)) {
      LinearComplex c = cube.total(i, j, opt.order);
      for (auto [T, d] : c.homology()) {
        r.homology.table.add(T, i, j, d);
        any = true;
      }
    }
    return any;
  }, cube.level_step());
  BraidWord plus = w.resolve(std::vector<int>(w.singular_count(), 1));
  r.homology.knot = plus.is_knot();
  if (!r.homology.knot)
    r.homology.warnings.push_back("closure is a link: homology may be infinite dimensional, truncation may be lossy");
  return r;
}

}  // namespace vkr
