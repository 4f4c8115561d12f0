#pragma once

// Wall-crossing maps and the homology of singular braids.
//
// The class in Ext^1(F(s_i^{-1}), F(s_i)) is realized by the short exact
// sequence of complexes (degrees -1, 0)
//
//   A = F(s_i) :   S{2}  --iota-->  S_i{1}
//   E          :   S'{-2} --id--->  S'{-2}
//   B          :   S_i{-1} --m--->  S{-2}      (= F(s_i^{-1}) shifted by one)
//
// Tensoring with the other letters and applying the functor termwise gives a
// long exact sequence per homological degree whose connecting map
// HH_p(C_-^k) -> HH_{p-1}(C_+^{k-1}) is the wall-crossing map.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vkr/braid.hpp"
#include "vkr/complex.hpp"
#include "vkr/homology.hpp"

namespace vkr {

/// The three rows of the extension and the maps between them.  `section`
/// is a left-module splitting of E -> B used to lift classes; `scale`
/// rescales the extension class (the inclusion A -> E is divided by it).
struct ExtensionRealization {
  int n = 2;
  int index = 1;
  Rational scale = 1;
  BComplex A, E, B;
  std::vector<BimoduleMap> inclusion;  // A^k -> E^k, k = -1, 0
  std::vector<BimoduleMap> projection; // E^k -> B^k
  std::vector<BimoduleMap> section;    // B^k -> E^k, left-linear only

  /// Chain-map, composition and splitting identities; empty when fine.
  std::string check() const {
    for (int t = 0; t < 2; ++t) {
      if (!(projection[t].matrix * inclusion[t].matrix).is_zero()) return "projection after inclusion is not zero";
      if (!(projection[t].matrix * section[t].matrix == PolyMatrix::identity(n, B.terms[t]->rank())))
        return "section does not split the projection";
      auto e = inclusion[t].check();
      if (!e.empty()) return "inclusion: " + e;
      e = projection[t].check();
      if (!e.empty()) return "projection: " + e;
    }
    if (!(inclusion[1].matrix * A.d[0].matrix == E.d[0].matrix * inclusion[0].matrix))
      return "inclusion is not a chain map";
    if (!(projection[1].matrix * E.d[0].matrix == B.d[0].matrix * projection[0].matrix))
      return "projection is not a chain map";
    return {};
  }
};

inline ExtensionRealization extension_realization(int n, int i, const Rational& scale = 1) {
  if (scale == 0) throw std::invalid_argument("extension_realization: scale must be nonzero");
  AuxBimodules aux = aux_bimodules(n, i);
  ExtensionRealization r;
  r.n = n;
  r.index = i;
  r.scale = scale;
  r.A = rouquier_positive(n, i);

  auto sp = aux.lower_in.target;
  BimoduleMap id = identity_map(sp);
  r.E = two_term(id, -1);

  BimoduleMap m = mult_map(n, i);
  m.source = aux.lower_out.target;  // S_i{-1}
  m.target = aux.upper_out.target;  // S{-2}
  m.degree = 0;
  r.B = two_term(m, -1);

  // A^{-1} = S{2} -> S'{-2}: (y-a)(y-b);  A^0 = S_i{1} -> S'{-2}: (y-a)
  BimoduleMap in0 = aux.lower_in, in1 = aux.upper_in;
  in0.source = r.A.terms[0];
  in1.source = r.A.terms[1];
  in0.target = in1.target = sp;
  in0.matrix = in0.matrix * (1 / scale);
  in1.matrix = in1.matrix * (1 / scale);
  r.inclusion = {in0, in1};

  BimoduleMap out0 = aux.lower_out, out1 = aux.upper_out;
  out0.target = r.B.terms[0];
  out1.target = r.B.terms[1];
  r.projection = {out0, out1};

  // S_i{-1} -> S'{-2}: 1 -> 1, y_{i+1} = a+b-y -> (a+b) 1 - y;  S{-2} -> S'{-2}: 1 -> 1
  Poly a = Poly::x(n, i), b = Poly::x(n, i + 1);
  BimoduleMap s0, s1;
  s0.source = r.B.terms[0];
  s0.target = sp;
  s0.matrix = PolyMatrix(n, 3, 2);
  s0.matrix(0, 0) = Poly::one(n);
  s0.matrix(0, 1) = a + b;
  s0.matrix(1, 1) = -Poly::one(n);
  s1.source = r.B.terms[1];
  s1.target = sp;
  s1.matrix = PolyMatrix(n, 3, 1);
  s1.matrix(0, 0) = Poly::one(n);
  r.section = {s0, s1};
  return r;
}

namespace detail {
inline ChainMap chain_map_of(const BComplex& src, const BComplex& tgt, const std::vector<BimoduleMap>& maps) {
  ChainMap f;
  f.source = &src;
  f.target = &tgt;
  f.lo = src.lo;
  f.maps = maps;
  return f;
}
}  // namespace detail

/// One wall: the singular letter at `position` of a word whose other letters
/// are resolved.  Holds the resolved complexes on both sides and the
/// tensored extension.
class Wall {
 public:
  /// `letters` are the complexes of all letters except `position`, which
  /// is replaced by F(s_i^{+1}) and F(s_i^{-1}).
  Wall(int n, std::vector<BComplex> letters, int position, int index, const Rational& scale = 1)
      : n_(n), position_(position), ext_(extension_realization(n, index, scale)) {
    auto build = [&](const BComplex& middle) {
      std::vector<BComplex> f = letters;
      f[position] = middle;
      return f;
    };
    plus_ = std::make_shared<const BComplex>(tensor_all(n, build(ext_.A)));
    minus_ = std::make_shared<const BComplex>(tensor_all(n, build(rouquier_negative(n, index))));
    E_ = std::make_shared<const BComplex>(tensor_all(n, build(ext_.E)));
    B_ = std::make_shared<const BComplex>(tensor_all(n, build(ext_.B)));
    inclusion_ = fold_maps(letters, position, ext_.A, ext_.E, ext_.inclusion, *plus_, *E_);
    projection_ = fold_maps(letters, position, ext_.E, ext_.B, ext_.projection, *E_, *B_);
    section_ = fold_maps(letters, position, ext_.B, ext_.E, ext_.section, *B_, *E_);
    build_shift_iso();
  }

  std::shared_ptr<const BComplex> plus() const { return plus_; }
  std::shared_ptr<const BComplex> minus() const { return minus_; }
  const BComplex& extension() const { return *E_; }
  const BComplex& quotient() const { return *B_; }
  const ExtensionRealization& realization() const { return ext_; }

  /// Termwise maps, k -> matrix.
  const BimoduleMap& inclusion(int k) const { return inclusion_.at(k - plus_->lo); }
  const BimoduleMap& projection(int k) const { return projection_.at(k - E_->lo); }
  const BimoduleMap& section(int k) const { return section_.at(k - B_->lo); }
  /// Signed identification minus^k -> B^{k-1}.
  const PolyMatrix& shift_iso(int k) const { return shift_.at(k); }

  /// Chain-map and exactness checks of the tensored sequence at bimodule level.
  std::string check() const {
    auto e = ext_.check();
    if (!e.empty()) return e;
    for (const BComplex* c : {plus_.get(), minus_.get(), E_.get(), B_.get()}) {
      e = c->check();
      if (!e.empty()) return "complex: " + e;
    }
    auto in = detail::chain_map_of(*plus_, *E_, inclusion_), out = detail::chain_map_of(*E_, *B_, projection_);
    e = in.check();
    if (!e.empty()) return "inclusion: " + e;
    e = out.check();
    if (!e.empty()) return "projection: " + e;
    for (int k = E_->lo; k <= E_->hi(); ++k) {
      if (!(projection(k).matrix * inclusion(k).matrix).is_zero()) return "composition not zero";
      if (!(projection(k).matrix * section(k).matrix == PolyMatrix::identity(n_, B_->term(k).rank())))
        return "section does not split";
    }
    // the shift identification intertwines differentials
    for (int k = minus_->lo; k < minus_->hi(); ++k)
      if (!(shift_iso(k + 1) * minus_->diff(k).matrix == B_->diff(k - 1).matrix * shift_iso(k)))
        return "shift identification is not a chain map";
    return {};
  }

 private:
  static std::vector<BimoduleMap> fold_maps(const std::vector<BComplex>& letters, int position, const BComplex& src,
                                            const BComplex& tgt, const std::vector<BimoduleMap>& middle,
                                            const BComplex& full_src, const BComplex& full_tgt) {
    // accumulate left to right exactly as tensor_all does; reserve keeps
    // the pointers held by the partial maps valid
    std::size_t m = letters.size();
    std::vector<BComplex> acc_src, acc_tgt;
    std::vector<ChainMap> factor, acc;
    acc_src.reserve(m);
    acc_tgt.reserve(m);
    factor.reserve(m);
    acc.reserve(m);
    for (std::size_t t = 0; t < m; ++t)
      factor.push_back(t == std::size_t(position) ? detail::chain_map_of(src, tgt, middle)
                                                  : identity_chain_map(letters[t]));
    acc_src.push_back(*factor[0].source);
    acc_tgt.push_back(*factor[0].target);
    acc.push_back(factor[0]);
    for (std::size_t t = 1; t < m; ++t) {
      acc_src.push_back(tensor(acc_src.back(), *factor[t].source));
      acc_tgt.push_back(tensor(acc_tgt.back(), *factor[t].target));
      acc.push_back(tensor_maps(acc[t - 1], factor[t], acc_src.back(), acc_tgt.back()));
    }
    std::vector<BimoduleMap> out = acc.back().maps;
    for (std::size_t t = 0; t < out.size(); ++t) {
      int k = full_src.lo + static_cast<int>(t);
      out[t].source = full_src.term_ptr(k);
      out[t].target = full_tgt.term_ptr(k);
    }
    return out;
  }

  void build_shift_iso() {
    for (int k = minus_->lo; k <= minus_->hi(); ++k) {
      const Bimodule& src = minus_->term(k);
      PolyMatrix P(n_, B_->has(k - 1) ? B_->term(k - 1).rank() : 0, src.rank());
      if (!B_->has(k - 1)) throw std::logic_error("Wall: quotient complex misses a degree");
      const auto& tb = B_->blocks[k - 1 - B_->lo];
      for (const auto& blk : minus_->blocks[k - minus_->lo]) {
        std::vector<int> want = blk.tuple;
        want.at(position_) -= 1;
        auto it = std::find_if(tb.begin(), tb.end(), [&](const Block& b) { return b.tuple == want; });
        if (it == tb.end() || it->gens.size() != blk.gens.size())
          throw std::logic_error("Wall: no matching block in the quotient complex");
        int later = 0;
        for (std::size_t t = position_ + 1; t < blk.tuple.size(); ++t) later += blk.tuple[t];
        Rational sign = later % 2 == 0 ? 1 : -1;
        for (std::size_t g = 0; g < blk.gens.size(); ++g)
          P(it->gens[g], blk.gens[g]) = Poly::constant(n_, Side::Left, sign);
      }
      shift_[k] = P;
    }
  }

  int n_;
  int position_;
  ExtensionRealization ext_;
  std::shared_ptr<const BComplex> plus_, minus_, E_, B_;
  std::vector<BimoduleMap> inclusion_, projection_, section_;
  std::map<int, PolyMatrix> shift_;
};

/// The wall-crossing map on functor homology for one wall, one piece at a time.
/// `minus` and `plus` must be built on the wall's complexes.
class WallCrossing {
 public:
  WallCrossing(std::shared_ptr<const Wall> wall, const HHComplex& minus, const HHComplex& plus)
      : wall_(std::move(wall)), minus_(minus), plus_(plus), f_(minus.functor()) {
    for (int k = wall_->extension().lo; k <= wall_->extension().hi(); ++k) {
      E_.emplace(k, KoszulModule(wall_->extension().term_ptr(k), f_));
      B_.emplace(k, KoszulModule(wall_->quotient().term_ptr(k), f_));
    }
  }

  /// Key of the target piece.
  PieceKey target_key(const PieceKey& key) const { return piece_target(f_, key); }

  /// HH(C_-^k) on `key` -> HH(C_+^{k-1}) on target_key(key), in lift coordinates.
  /// Throws std::logic_error if a lifted boundary does not come from the subcomplex.
  const SparseMatrix& matrix(int k, const PieceKey& key) const {
    auto ck = std::make_pair(k, key);
    auto it = cache_.find(ck);
    if (it != cache_.end()) return it->second;
    PieceKey tk = target_key(key);
    const HomologyAt& hs = minus_.hh(k, key);
    int rows = plus_.has(k - 1) ? plus_.hh(k - 1, tk).dim : 0;
    SparseMatrix W(rows, hs.dim);
    if (hs.dim > 0 && rows > 0) {
      const KoszulModule& Bm = B_.at(k - 1);
      const KoszulModule& Em = E_.at(k - 1);
      SparseMatrix to_b = piece_map(wall_->shift_iso(k), minus_.module(k), Bm, key);
      SparseMatrix lift = piece_map(wall_->section(k - 1).matrix, Bm, Em, key);
      SparseMatrix boundary = piece_differential(Em, key);
      SparseMatrix incl = piece_map(wall_->inclusion(k - 1).matrix, plus_.module(k - 1), Em, tk);
      LinearSolver solver(incl);
      const HomologyAt& ht = plus_.hh(k - 1, tk);
      for (int c = 0; c < hs.dim; ++c) {
        SparseVec w = boundary.apply(lift.apply(to_b.apply(hs.lifts[c])));
        auto u = solver.solve(w);
        if (!u) throw std::logic_error("wall crossing: lifted boundary is not in the subcomplex");
        W.col[c] = dense_to_sparse(ht.coordinates(*u));
      }
    }
    return cache_.emplace(ck, std::move(W)).first->second;
  }

  /// Same map on the marked quotients (sl_N reduction).
  SparseMatrix marked_matrix(int k, const PieceKey& key) const {
    PieceKey tk = target_key(key);
    const auto& src = minus_.marked(k, key);
    int rows = plus_.has(k - 1) ? static_cast<int>(plus_.marked(k - 1, tk).free.size()) : 0;
    SparseMatrix r(rows, static_cast<int>(src.free.size()));
    if (rows == 0 || src.free.empty()) return r;
    const SparseMatrix& W = matrix(k, key);
    const auto& tgt = plus_.marked(k - 1, tk);
    for (int c = 0; c < r.cols; ++c) {
      SparseVec v = tgt.image.reduce(W.col[src.free[c]]);
      SparseVec w;
      for (const auto& [i, x] : v) w.emplace_back(tgt.column.at(i), x);
      r.col[c] = std::move(w);
    }
    return r;
  }

  const HHComplex& minus() const { return minus_; }
  const HHComplex& plus() const { return plus_; }

 private:
  std::shared_ptr<const Wall> wall_;
  const HHComplex& minus_;
  const HHComplex& plus_;
  FunctorSpec f_;
  std::map<int, KoszulModule> E_, B_;
  mutable std::map<std::pair<int, PieceKey>, SparseMatrix> cache_;
};

}  // namespace vkr
