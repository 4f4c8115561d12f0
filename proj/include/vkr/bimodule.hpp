#pragma once

// Graded S-S bimodules that are free of finite rank as left S-modules.
//
// A bimodule of rank r is stored as generator degrees g_1..g_r together with
// the matrices A_1..A_n of right multiplication by x_1..x_n: column b of A_k
// expands g_b * x_k in the left basis.  On coefficient vectors the right
// action is v -> A_k v.  A bimodule map is a matrix of left-polynomials that
// intertwines the right actions.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "vkr/poly.hpp"

namespace vkr {

/// Dense matrix of left-only polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int n, int rows, int cols) : n_(n), rows_(rows), cols_(cols), e_(rows * cols, Poly(n, Side::Left)) {}

  static PolyMatrix identity(int n, int r) {
    PolyMatrix m(n, r, r);
    for (int i = 0; i < r; ++i) m(i, i) = Poly::one(n);
    return m;
  }
  static PolyMatrix scalar(int n, int r, const Poly& p) {
    PolyMatrix m(n, r, r);
    for (int i = 0; i < r; ++i) m(i, i) = p;
    return m;
  }

  int strands() const { return n_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Poly& operator()(int i, int j) { return e_[i * cols_ + j]; }
  const Poly& operator()(int i, int j) const { return e_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix: dimension mismatch");
    PolyMatrix r(a.n_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) {
    a.check_same(b);
    for (std::size_t t = 0; t < a.e_.size(); ++t) a.e_[t] += b.e_[t];
    return a;
  }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) {
    a.check_same(b);
    for (std::size_t t = 0; t < a.e_.size(); ++t) a.e_[t] -= b.e_[t];
    return a;
  }
  friend PolyMatrix operator*(PolyMatrix a, const Rational& s) {
    for (auto& p : a.e_) p *= s;
    return a;
  }
  friend PolyMatrix operator*(const Poly& p, PolyMatrix a) {
    for (auto& q : a.e_) q = p * q;
    return a;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
    }
    return s + "]";
  }

 private:
  void check_same(const PolyMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("PolyMatrix: dimension mismatch");
  }
  int n_ = 1, rows_ = 0, cols_ = 0;
  std::vector<Poly> e_;
};

struct Bimodule {
  int n = 1;
  std::vector<int> degrees;         // generator internal degrees
  std::vector<PolyMatrix> right;    // right[k-1]: action of x_k, k = 1..n

  int rank() const { return static_cast<int>(degrees.size()); }

  /// Grading shift {a}: every generator degree moves by a.
  Bimodule shifted(int a) const {
    Bimodule b = *this;
    for (auto& g : b.degrees) g += a;
    return b;
  }

  /// Right action of a left-only polynomial f: f(A_1, ..., A_{n-1}).
  PolyMatrix right_action(const Poly& f) const;

  /// Checks the structural invariants; returns an empty string or a reason.
  std::string check() const;
};

/// Evaluates polynomials at the commuting matrices of a bimodule's right
/// action, caching monomial powers.
class RightEvaluator {
 public:
  explicit RightEvaluator(const Bimodule& m) : m_(m) {}

  const PolyMatrix& monomial(const Exponents& e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    PolyMatrix r;
    int t = 0;
    while (t < static_cast<int>(e.size()) && e[t] == 0) ++t;
    if (t == static_cast<int>(e.size())) {
      r = PolyMatrix::identity(m_.n, m_.rank());
    } else {
      Exponents rest = e;
      --rest[t];
      r = m_.right[t] * monomial(rest);
    }
    return cache_.emplace(e, std::move(r)).first->second;
  }

  PolyMatrix eval(const Poly& f) {
    if (f.side() != Side::Left) throw std::invalid_argument("RightEvaluator: expects a left-only polynomial");
    PolyMatrix r(m_.n, m_.rank(), m_.rank());
    for (const auto& [e, c] : f.terms()) r = r + monomial(e) * c;
    return r;
  }

  /// Evaluates g(x, y) in S (x) S as an endomorphism: x acts by left
  /// multiplication, y by the right action.
  PolyMatrix eval_two_sided(const Poly& g) {
    if (g.side() != Side::TwoSided) throw std::invalid_argument("RightEvaluator: expects a two-sided polynomial");
    int m = m_.n - 1;
    PolyMatrix r(m_.n, m_.rank(), m_.rank());
    for (const auto& [e, c] : g.terms()) {
      Exponents ex(e.begin(), e.begin() + m), ey(e.begin() + m, e.end());
      r = r + Poly::monomial(m_.n, Side::Left, ex, c) * monomial(ey);
    }
    return r;
  }

 private:
  const Bimodule& m_;
  std::map<Exponents, PolyMatrix> cache_;
};

inline PolyMatrix Bimodule::right_action(const Poly& f) const { return RightEvaluator(*this).eval(f); }

namespace detail {
inline std::string check_homogeneous(const PolyMatrix& m, const std::vector<int>& src, const std::vector<int>& tgt,
                                     int shift, const std::string& what) {
  for (int a = 0; a < m.rows(); ++a)
    for (int b = 0; b < m.cols(); ++b) {
      const Poly& p = m(a, b);
      if (p.is_zero()) continue;
      if (!p.is_homogeneous() || p.degree() != shift + src[b] - tgt[a])
        return what + ": entry (" + std::to_string(a) + "," + std::to_string(b) + ") = " + p.str() +
               " is not homogeneous of degree " + std::to_string(shift + src[b] - tgt[a]);
    }
  return {};
}
}  // namespace detail

inline std::string Bimodule::check() const {
  if (static_cast<int>(right.size()) != n) return "wrong number of right-action matrices";
  for (const auto& a : right)
    if (a.rows() != rank() || a.cols() != rank()) return "right-action matrix has wrong shape";
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      if (!(right[k] * right[l] == right[l] * right[k]))
        return "right actions of x_" + std::to_string(k + 1) + " and x_" + std::to_string(l + 1) + " do not commute";
  PolyMatrix sum(n, rank(), rank());
  for (const auto& a : right) sum = sum + a;
  if (!sum.is_zero()) return "right actions do not sum to zero";
  for (int k = 0; k < n; ++k) {
    auto r = detail::check_homogeneous(right[k], degrees, degrees, 2, "A_" + std::to_string(k + 1));
    if (!r.empty()) return r;
  }
  return {};
}

struct BimoduleMap {
  std::shared_ptr<const Bimodule> source;
  std::shared_ptr<const Bimodule> target;
  int degree = 0;
  PolyMatrix matrix;  // target.rank x source.rank

  std::string check() const {
    if (matrix.rows() != target->rank() || matrix.cols() != source->rank()) return "map has wrong shape";
    auto r = detail::check_homogeneous(matrix, source->degrees, target->degrees, degree, "map");
    if (!r.empty()) return r;
    for (int k = 0; k < source->n; ++k)
      if (!(matrix * source->right[k] == target->right[k] * matrix))
        return "map does not intertwine the right action of x_" + std::to_string(k + 1);
    return {};
  }
};

inline std::shared_ptr<const Bimodule> share(Bimodule b) { return std::make_shared<const Bimodule>(std::move(b)); }

/// S as a bimodule over itself.
inline Bimodule identity_bimodule(int n) {
  if (n < 1) throw std::invalid_argument("identity_bimodule: n must be >= 1");
  Bimodule b;
  b.n = n;
  b.degrees = {0};
  for (int k = 1; k <= n; ++k) b.right.push_back(PolyMatrix::scalar(n, 1, Poly::x(n, k)));
  return b;
}

inline void check_index(int n, int i) {
  if (i < 1 || i > n - 1) throw std::out_of_range("generator index " + std::to_string(i) + " out of range for " +
                                                  std::to_string(n) + " strands");
}

/// S_i = S (x)_{S^{s_i}} S {-1}, left basis {1(x)1, 1(x)x_{i+1}}.
inline Bimodule bs_bimodule(int n, int i) {
  check_index(n, i);
  Poly xi = Poly::x(n, i), xj = Poly::x(n, i + 1);
  Poly e1 = xi + xj, e2 = xi * xj;
  Bimodule b;
  b.n = n;
  b.degrees = {-1, 1};
  PolyMatrix next(n, 2, 2);
  next(0, 1) = -e2;
  next(1, 0) = Poly::one(n);
  next(1, 1) = e1;
  for (int k = 1; k <= n; ++k) {
    if (k == i + 1) b.right.push_back(next);
    else if (k == i) b.right.push_back(PolyMatrix::scalar(n, 2, e1) - next);
    else b.right.push_back(PolyMatrix::scalar(n, 2, Poly::x(n, k)));
  }
  return b;
}

/// The cyclic bimodule S[y]/(f(y)) with y = right x_i and f monic in y whose
/// coefficients are symmetric in x_i, x_{i+1}; coeffs lists f's lower
/// coefficients c_0..c_{d-1} (f = y^d + sum c_t y^t).  Basis {1, y, .., y^{d-1}}.
inline Bimodule cyclic_bimodule(int n, int i, const std::vector<Poly>& coeffs) {
  int d = static_cast<int>(coeffs.size());
  Bimodule b;
  b.n = n;
  for (int t = 0; t < d; ++t) b.degrees.push_back(2 * t);
  PolyMatrix ya(n, d, d);
  for (int t = 0; t + 1 < d; ++t) ya(t + 1, t) = Poly::one(n);
  for (int t = 0; t < d; ++t) ya(t, d - 1) = -coeffs[t];
  Poly e1 = Poly::x(n, i) + Poly::x(n, i + 1);
  for (int k = 1; k <= n; ++k) {
    if (k == i) b.right.push_back(ya);
    else if (k == i + 1) b.right.push_back(PolyMatrix::scalar(n, d, e1) - ya);
    else b.right.push_back(PolyMatrix::scalar(n, d, Poly::x(n, k)));
  }
  return b;
}

/// m_i: S_i -> S, degree +1.
inline BimoduleMap mult_map(int n, int i) {
  check_index(n, i);
  BimoduleMap f;
  f.source = share(bs_bimodule(n, i));
  f.target = share(identity_bimodule(n));
  f.degree = 1;
  f.matrix = PolyMatrix(n, 1, 2);
  f.matrix(0, 0) = Poly::one(n);
  f.matrix(0, 1) = Poly::x(n, i + 1);
  return f;
}

/// iota_i: S{2} -> S_i with 1 -> x_i(x)1 - 1(x)x_{i+1}.
inline BimoduleMap iota_map(int n, int i) {
  check_index(n, i);
  BimoduleMap f;
  f.source = share(identity_bimodule(n).shifted(2));
  f.target = share(bs_bimodule(n, i));
  f.degree = 0;
  f.matrix = PolyMatrix(n, 2, 1);
  f.matrix(0, 0) = Poly::x(n, i);
  f.matrix(1, 0) = -Poly::one(n);
  return f;
}

/// S' = S~/((x_i(x)1 - 1(x)x_i)^2 (x_i(x)1 - 1(x)x_{i+1})) and the maps
/// threading it between the two-term complexes of sigma_i and sigma_i^{-1}.
///
/// Writing y for the right action of x_i, S' = S[y]/((y-a)^2 (y-b)) with
/// a = x_i, b = x_{i+1}; S_i = S[y]/((y-a)(y-b)) and S = S[y]/(y-a).  With
/// the grading shifts below all maps have internal degree 0:
///
///   lower row:  S{2}   --(y-a)(y-b)-->  S'{-2}  --quotient-->  S_i{-1}
///   upper row:  S_i{1} --(y-a)------->  S'{-2}  --quotient-->  S{-2}
///
/// with vertical maps iota_i, identity and m_i.
struct AuxBimodules {
  Bimodule s_prime;  // unshifted, basis {1, y, y^2}, degrees (0, 2, 4)
  BimoduleMap lower_in;    // S{2} -> S'{-2}
  BimoduleMap lower_out;   // S'{-2} -> S_i{-1}
  BimoduleMap upper_in;    // S_i{1} -> S'{-2}
  BimoduleMap upper_out;   // S'{-2} -> S{-2}
};

inline AuxBimodules aux_bimodules(int n, int i) {
  check_index(n, i);
  Poly a = Poly::x(n, i), b = Poly::x(n, i + 1);
  // (y-a)^2 (y-b) = y^3 - (2a+b) y^2 + (a^2+2ab) y - a^2 b
  AuxBimodules r;
  r.s_prime = cyclic_bimodule(n, i, {-(a * a * b), a * a + Rational(2) * a * b, -(Rational(2) * a + b)});
  auto sp = share(r.s_prime.shifted(-2));
  auto s = identity_bimodule(n);
  auto si = bs_bimodule(n, i);
  Poly one = Poly::one(n);

  // (y-a)(y-b) = y^2 - (a+b) y + ab
  r.lower_in.source = share(s.shifted(2));
  r.lower_in.target = sp;
  r.lower_in.matrix = PolyMatrix(n, 3, 1);
  r.lower_in.matrix(0, 0) = a * b;
  r.lower_in.matrix(1, 0) = -(a + b);
  r.lower_in.matrix(2, 0) = one;

  // S_i basis {1, y_{i+1}} = {1, a+b-y}; y^2 = (a+b) y - ab in S_i.
  r.lower_out.source = sp;
  r.lower_out.target = share(si.shifted(-1));
  r.lower_out.matrix = PolyMatrix(n, 2, 3);
  r.lower_out.matrix(0, 0) = one;
  r.lower_out.matrix(0, 1) = a + b;  // y = (a+b)*1 - y_{i+1}
  r.lower_out.matrix(1, 1) = -one;
  // y^2 = (a+b) y - ab = ((a+b)^2 - ab) 1 - (a+b) y_{i+1}
  r.lower_out.matrix(0, 2) = (a + b) * (a + b) - a * b;
  r.lower_out.matrix(1, 2) = -(a + b);

  // (y - a) * {1, y_{i+1}}: 1 -> y - a, y_{i+1} = a+b-y -> (a+b-y)(y-a)
  // = -(y^2) + (2a+b) y - a(a+b)
  r.upper_in.source = share(si.shifted(1));
  r.upper_in.target = sp;
  r.upper_in.matrix = PolyMatrix(n, 3, 2);
  r.upper_in.matrix(0, 0) = -a;
  r.upper_in.matrix(1, 0) = one;
  r.upper_in.matrix(0, 1) = -(a * (a + b));
  r.upper_in.matrix(1, 1) = Rational(2) * a + b;
  r.upper_in.matrix(2, 1) = -one;

  r.upper_out.source = sp;
  r.upper_out.target = share(s.shifted(-2));
  r.upper_out.matrix = PolyMatrix(n, 1, 3);
  r.upper_out.matrix(0, 0) = one;
  r.upper_out.matrix(0, 1) = a;
  r.upper_out.matrix(0, 2) = a * a;
  return r;
}

/// M (x)_S N. Basis index of m_a (x) n_c is a * rank(N) + c.
inline Bimodule tensor_over_S(const Bimodule& M, const Bimodule& N) {
  if (M.n != N.n) throw std::invalid_argument("tensor_over_S: mismatched strand count");
  int n = M.n, rm = M.rank(), rn = N.rank();
  Bimodule T;
  T.n = n;
  T.degrees.resize(rm * rn);
  for (int a = 0; a < rm; ++a)
    for (int c = 0; c < rn; ++c) T.degrees[a * rn + c] = M.degrees[a] + N.degrees[c];
  RightEvaluator ev(M);
  for (int k = 0; k < n; ++k) {
    PolyMatrix A(n, rm * rn, rm * rn);
    const PolyMatrix& AN = N.right[k];
    for (int d = 0; d < rn; ++d)
      for (int c = 0; c < rn; ++c) {
        if (AN(d, c).is_zero()) continue;
        PolyMatrix blk = ev.eval(AN(d, c));
        for (int a2 = 0; a2 < rm; ++a2)
          for (int a = 0; a < rm; ++a) A(a2 * rn + d, a * rn + c) = blk(a2, a);
      }
    T.right.push_back(std::move(A));
  }
  return T;
}

/// f (x) g : M (x) N -> M' (x) N'.
inline BimoduleMap map_tensor(const BimoduleMap& f, const BimoduleMap& g,
                              std::shared_ptr<const Bimodule> src = nullptr,
                              std::shared_ptr<const Bimodule> tgt = nullptr) {
  int n = f.source->n;
  if (g.source->n != n) throw std::invalid_argument("map_tensor: mismatched strand count");
  if (!src) src = share(tensor_over_S(*f.source, *g.source));
  if (!tgt) tgt = share(tensor_over_S(*f.target, *g.target));
  int rm = f.source->rank(), rn = g.source->rank();
  int tm = f.target->rank(), tn = g.target->rank();
  BimoduleMap h;
  h.source = src;
  h.target = tgt;
  h.degree = f.degree + g.degree;
  h.matrix = PolyMatrix(n, tm * tn, rm * rn);
  RightEvaluator ev(*f.target);
  for (int d = 0; d < tn; ++d)
    for (int c = 0; c < rn; ++c) {
      if (g.matrix(d, c).is_zero()) continue;
      PolyMatrix blk = ev.eval(g.matrix(d, c)) * f.matrix;  // tm x rm
      for (int a2 = 0; a2 < tm; ++a2)
        for (int a = 0; a < rm; ++a) h.matrix(a2 * tn + d, a * rn + c) = blk(a2, a);
    }
  return h;
}

inline BimoduleMap identity_map(std::shared_ptr<const Bimodule> m) {
  BimoduleMap f;
  f.source = m;
  f.target = m;
  f.matrix = PolyMatrix::identity(m->n, m->rank());
  return f;
}

inline BimoduleMap compose(const BimoduleMap& g, const BimoduleMap& f) {
  BimoduleMap h;
  h.source = f.source;
  h.target = g.target;
  h.degree = f.degree + g.degree;
  h.matrix = g.matrix * f.matrix;
  return h;
}

}  // namespace vkr
