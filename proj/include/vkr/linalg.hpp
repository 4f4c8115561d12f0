#pragma once

// Exact sparse linear algebra over Q: column reduction, kernels, images and
// degreewise homology with chosen representative cycles.

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vkr/poly.hpp"

namespace vkr {

/// Sparse vector: strictly increasing indices, nonzero values.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline SparseVec to_sparse(const std::map<int, Rational>& m) {
  SparseVec v;
  v.reserve(m.size());
  for (const auto& [i, c] : m)
    if (c != 0) v.emplace_back(i, c);
  return v;
}

inline Rational entry(const SparseVec& v, int i) {
  auto it = std::lower_bound(v.begin(), v.end(), i, [](const auto& p, int k) { return p.first < k; });
  return (it != v.end() && it->first == i) ? it->second : Rational(0);
}

/// a + s*b
inline SparseVec axpy(const SparseVec& a, const Rational& s, const SparseVec& b) {
  SparseVec r;
  r.reserve(a.size() + b.size());
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      r.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      r.emplace_back(ib->first, s * ib->second);
      ++ib;
    } else {
      Rational c = ia->second + s * ib->second;
      if (c != 0) r.emplace_back(ia->first, std::move(c));
      ++ia;
      ++ib;
    }
  }
  return r;
}

inline SparseVec scaled(SparseVec v, const Rational& s) {
  if (s == 0) return {};
  for (auto& [i, c] : v) c *= s;
  return v;
}

/// Sparse matrix stored by columns.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVec> col;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}

  static SparseMatrix identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.col[i] = {{i, Rational(1)}};
    return m;
  }

  bool is_zero() const {
    for (const auto& c : col)
      if (!c.empty()) return false;
    return true;
  }

  SparseVec apply(const SparseVec& v) const {
    std::map<int, Rational> acc;
    for (const auto& [j, x] : v) {
      if (j >= cols) throw std::out_of_range("SparseMatrix::apply: index out of range");
      for (const auto& [i, a] : col[j]) acc[i] += a * x;
    }
    return to_sparse(acc);
  }

  Rational at(int i, int j) const { return entry(col[j], i); }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("SparseMatrix: dimension mismatch");
    SparseMatrix r(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) r.col[j] = a.apply(b.col[j]);
    return r;
  }
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("SparseMatrix: dimension mismatch");
    SparseMatrix r(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) r.col[j] = axpy(a.col[j], 1, b.col[j]);
    return r;
  }
  SparseMatrix scaled_by(const Rational& s) const {
    SparseMatrix r(rows, cols);
    for (int j = 0; j < cols; ++j) r.col[j] = scaled(col[j], s);
    return r;
  }
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.col == b.col;
  }
};

/// Echelon basis of a subspace keyed by leading index. Reduction walks the
/// pivots in increasing order, so plain (not reduced) echelon form suffices.
class EchelonBasis {
 public:
  std::size_t size() const { return pivots_.size(); }

  /// Remainder of v modulo the span; optionally records coefficients c with
  /// v = remainder + sum_k c_k * basis_k.
  SparseVec reduce(const SparseVec& v, std::map<int, Rational>* coeffs = nullptr) const {
    std::map<int, Rational> acc;
    for (const auto& [i, c] : v) acc.emplace(i, c);
    auto it = acc.begin();
    while (it != acc.end()) {
      auto pv = pivots_.find(it->first);
      if (pv == pivots_.end() || it->second == 0) {
        ++it;
        continue;
      }
      Rational f = it->second;  // basis vectors are normalized to leading 1
      const auto& [id, vec] = pv->second;
      for (const auto& [i, c] : vec) {
        auto& slot = acc[i];
        slot -= f * c;
      }
      if (coeffs) (*coeffs)[id] += f;
      it = acc.upper_bound(pv->first);
    }
    return to_sparse(acc);
  }

  /// Inserts v if independent; returns its id or -1.
  int insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return -1;
    Rational lead = r.front().second;
    r = scaled(std::move(r), 1 / lead);
    int id = static_cast<int>(vectors_.size());
    vectors_.push_back(r);
    pivots_.emplace(r.front().first, std::make_pair(id, r));
    return id;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  const std::vector<SparseVec>& vectors() const { return vectors_; }

 private:
  std::map<int, std::pair<int, SparseVec>> pivots_;
  std::vector<SparseVec> vectors_;
};

/// Column reduction of a matrix: rank, an echelon basis of the image and a
/// basis of the kernel.
struct ColumnReduction {
  int rank = 0;
  EchelonBasis image;
  std::vector<SparseVec> kernel;

  explicit ColumnReduction(const SparseMatrix& m) {
    // pivot row -> (reduced column, combination of original columns)
    std::map<int, std::pair<SparseVec, SparseVec>> piv;
    for (int j = 0; j < m.cols; ++j) {
      SparseVec v = m.col[j];
      SparseVec comb = {{j, Rational(1)}};
      while (!v.empty()) {
        auto it = piv.find(v.front().first);
        if (it == piv.end()) break;
        Rational f = -v.front().second / it->second.first.front().second;
        v = axpy(v, f, it->second.first);
        comb = axpy(comb, f, it->second.second);
      }
      if (v.empty()) {
        kernel.push_back(std::move(comb));
      } else {
        image.insert(v);
        int lead = v.front().first;
        piv.emplace(lead, std::make_pair(std::move(v), std::move(comb)));
        ++rank;
      }
    }
  }
};

inline int rank_of(const SparseMatrix& m) { return ColumnReduction(m).rank; }

/// Solves m x = b for b in the column space of m.
class LinearSolver {
 public:
  explicit LinearSolver(const SparseMatrix& m) : cols_(m.cols) {
    for (int j = 0; j < m.cols; ++j) {
      SparseVec v = m.col[j];
      SparseVec comb = {{j, Rational(1)}};
      reduce(v, comb);
      if (v.empty()) continue;
      Rational lead = v.front().second;
      int row = v.front().first;
      piv_.emplace(row, std::make_pair(scaled(std::move(v), 1 / lead), scaled(std::move(comb), 1 / lead)));
    }
  }

  /// A solution, or nothing when b is not in the column space.
  std::optional<SparseVec> solve(const SparseVec& b) const {
    SparseVec v = b;
    SparseVec comb;
    reduce(v, comb);
    if (!v.empty()) return std::nullopt;
    return scaled(std::move(comb), -1);
  }

 private:
  // v <- v - sum c_p piv_p, comb <- comb - sum c_p comb_p, until v has no pivot entry
  void reduce(SparseVec& v, SparseVec& comb) const {
    while (!v.empty()) {
      auto it = piv_.end();
      for (const auto& [i, c] : v) {
        it = piv_.find(i);
        if (it != piv_.end()) break;
      }
      if (it == piv_.end()) return;
      Rational f = -entry(v, it->first);
      v = axpy(v, f, it->second.first);
      comb = axpy(comb, f, it->second.second);
    }
  }

  int cols_;
  std::map<int, std::pair<SparseVec, SparseVec>> piv_;
};

/// Homology of U --in--> V --out--> W at V, with representative cycles.
struct HomologyAt {
  int dim = 0;
  std::vector<SparseVec> lifts;  // cycles representing the homology basis
  EchelonBasis boundaries;
  EchelonBasis reps;  // lifts reduced modulo boundaries, echelonized; ids index `lifts`

  HomologyAt() = default;
  HomologyAt(const SparseMatrix* in, const SparseMatrix* out, int dimV) {
    if (in) {
      if (in->rows != dimV) throw std::invalid_argument("HomologyAt: incoming map has wrong target");
      for (const auto& c : in->col)
        if (!c.empty()) boundaries.insert(c);
    }
    std::vector<SparseVec> cycles;
    if (out) {
      if (out->cols != dimV) throw std::invalid_argument("HomologyAt: outgoing map has wrong source");
      cycles = ColumnReduction(*out).kernel;
    } else {
      for (int i = 0; i < dimV; ++i) cycles.push_back({{i, Rational(1)}});
    }
    for (const auto& z : cycles) {
      SparseVec r = boundaries.reduce(z);
      if (r.empty()) continue;
      if (reps.insert(r) >= 0) {
        lifts.push_back(reps.vectors().back());
      }
    }
    dim = static_cast<int>(lifts.size());
  }

  /// Coordinates of the class of a cycle z in the basis given by `lifts`.
  std::vector<Rational> coordinates(const SparseVec& z) const {
    SparseVec r = boundaries.reduce(z);
    std::map<int, Rational> c;
    SparseVec rest = reps.reduce(r, &c);
    if (!rest.empty()) throw std::logic_error("HomologyAt::coordinates: vector is not a cycle");
    std::vector<Rational> out(dim);
    for (const auto& [id, v] : c) out[id] = v;
    return out;
  }
};

inline SparseVec dense_to_sparse(const std::vector<Rational>& d) {
  SparseVec v;
  for (int i = 0; i < static_cast<int>(d.size()); ++i)
    if (d[i] != 0) v.emplace_back(i, d[i]);
  return v;
}

}  // namespace vkr
