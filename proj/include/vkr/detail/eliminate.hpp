#pragma once

// Block-level Gaussian elimination for BComplex (included from complex.hpp).

#include <optional>

namespace vkr {

namespace detail {

inline PolyMatrix submatrix(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  PolyMatrix r(m.strands(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = m(rows[i], cols[j]);
  return r;
}

inline Bimodule restrict_bimodule(const Bimodule& b, const std::vector<int>& gens) {
  Bimodule r;
  r.n = b.n;
  for (int g : gens) r.degrees.push_back(b.degrees[g]);
  for (const auto& A : b.right) r.right.push_back(submatrix(A, gens, gens));
  return r;
}

/// Inverse of a square matrix of constants, or nullopt when singular or
/// when some entry is not a constant.
inline std::optional<std::vector<std::vector<Rational>>> constant_inverse(const PolyMatrix& m) {
  int s = m.rows();
  if (m.cols() != s) return std::nullopt;
  std::vector<std::vector<Rational>> a(s, std::vector<Rational>(2 * s));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      if (!m(i, j).is_constant()) return std::nullopt;
      a[i][j] = m(i, j).constant_term();
      a[i][s + j] = i == j ? 1 : 0;
    }
  for (int c = 0; c < s; ++c) {
    int p = c;
    while (p < s && a[p][c] == 0) ++p;
    if (p == s) return std::nullopt;
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (int r = 0; r < s; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (int t = 0; t < 2 * s; ++t) a[r][t] -= f * a[c][t];
    }
  }
  std::vector<std::vector<Rational>> inv(s, std::vector<Rational>(s));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) inv[i][j] = a[i][s + j];
  return inv;
}

inline std::vector<int> complement(int rank, const std::vector<int>& gens) {
  std::vector<bool> in(rank, false);
  for (int g : gens) in[g] = true;
  std::vector<int> c;
  for (int g = 0; g < rank; ++g)
    if (!in[g]) c.push_back(g);
  return c;
}

inline std::vector<Block> renumber_blocks(const std::vector<Block>& blocks, const std::vector<int>& kept,
                                          int rank, std::size_t drop) {
  std::vector<int> pos(rank, -1);
  for (std::size_t t = 0; t < kept.size(); ++t) pos[kept[t]] = static_cast<int>(t);
  std::vector<Block> out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b == drop) continue;
    Block nb = blocks[b];
    for (auto& g : nb.gens) g = pos[g];
    out.push_back(std::move(nb));
  }
  return out;
}

}  // namespace detail

inline BComplex gaussian_eliminate(const BComplex& input) {
  BComplex C = input;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int k = C.lo; k < C.hi() && !progress; ++k) {
      int t = k - C.lo;
      const auto& dk = C.d[t].matrix;
      for (std::size_t pb = 0; pb < C.blocks[t].size() && !progress; ++pb) {
        const auto& P = C.blocks[t][pb].gens;
        for (std::size_t qb = 0; qb < C.blocks[t + 1].size() && !progress; ++qb) {
          const auto& Q = C.blocks[t + 1][qb].gens;
          if (P.size() != Q.size() || P.empty()) continue;
          auto inv = detail::constant_inverse(detail::submatrix(dk, Q, P));
          if (!inv) continue;

          int n = C.n;
          int rs = C.terms[t]->rank(), rt = C.terms[t + 1]->rank();
          std::vector<int> Pc = detail::complement(rs, P), Qc = detail::complement(rt, Q);
          PolyMatrix eps = detail::submatrix(dk, Qc, Pc);
          PolyMatrix gam = detail::submatrix(dk, Qc, P);
          PolyMatrix del = detail::submatrix(dk, Q, Pc);
          PolyMatrix phinv(n, static_cast<int>(P.size()), static_cast<int>(P.size()));
          for (std::size_t i = 0; i < P.size(); ++i)
            for (std::size_t j = 0; j < P.size(); ++j) phinv(i, j) = Poly::constant(n, Side::Left, (*inv)[i][j]);
          PolyMatrix newd = eps - gam * phinv * del;

          auto src = share(detail::restrict_bimodule(*C.terms[t], Pc));
          auto tgt = share(detail::restrict_bimodule(*C.terms[t + 1], Qc));
          C.blocks[t] = detail::renumber_blocks(C.blocks[t], Pc, rs, pb);
          C.blocks[t + 1] = detail::renumber_blocks(C.blocks[t + 1], Qc, rt, qb);
          C.terms[t] = src;
          C.terms[t + 1] = tgt;
          C.d[t] = BimoduleMap{src, tgt, 0, newd};
          if (t > 0) {
            auto& prev = C.d[t - 1];
            std::vector<int> all(prev.source->rank());
            for (int g = 0; g < prev.source->rank(); ++g) all[g] = g;
            prev = BimoduleMap{prev.source, src, 0, detail::submatrix(prev.matrix, Pc, all)};
          }
          if (t + 1 < static_cast<int>(C.d.size())) {
            auto& next = C.d[t + 1];
            std::vector<int> all(next.target->rank());
            for (int g = 0; g < next.target->rank(); ++g) all[g] = g;
            next = BimoduleMap{tgt, next.target, 0, detail::submatrix(next.matrix, all, Qc)};
          }
          progress = true;
        }
      }
    }
  }
  // drop empty terms at both ends
  while (!C.terms.empty() && C.terms.front()->rank() == 0) {
    C.terms.erase(C.terms.begin());
    C.blocks.erase(C.blocks.begin());
    if (!C.d.empty()) C.d.erase(C.d.begin());
    ++C.lo;
  }
  while (!C.terms.empty() && C.terms.back()->rank() == 0) {
    C.terms.pop_back();
    C.blocks.pop_back();
    if (!C.d.empty()) C.d.pop_back();
  }
  if (C.terms.empty()) C.lo = 0;
  return C;
}

}  // namespace vkr
