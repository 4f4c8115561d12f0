#pragma once

// Integer Laurent polynomials in two variables (a, q), used for Euler
// characteristics, the HOMFLY oracle and the change of variables between them.

#include <gmpxx.h>

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace vkr {

using Integer = mpz_class;

class Laurent {
 public:
  using Key = std::pair<int, int>;  // (exponent of a, exponent of q)
  using Terms = std::map<Key, Integer>;

  Laurent() = default;
  static Laurent monomial(int ea, int eq, const Integer& c = 1) {
    Laurent r;
    if (c != 0) r.t_[{ea, eq}] = c;
    return r;
  }
  static Laurent constant(const Integer& c) { return monomial(0, 0, c); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Integer coeff(int ea, int eq) const {
    auto it = t_.find({ea, eq});
    return it == t_.end() ? Integer(0) : it->second;
  }
  void add(int ea, int eq, const Integer& c) {
    if (c == 0) return;
    auto [it, ins] = t_.try_emplace({ea, eq}, c);
    if (!ins) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [k, c] : o.t_) add(k.first, k.second, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [k, c] : o.t_) add(k.first, k.second, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(const Laurent& a) { return Laurent() - a; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  friend Laurent operator*(Laurent a, const Integer& s) {
    if (s == 0) return {};
    for (auto& [k, c] : a.t_) c *= s;
    return a;
  }
  Laurent pow(int k) const {
    if (k < 0) throw std::invalid_argument("Laurent::pow: negative exponent");
    Laurent r = constant(1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  friend bool operator==(const Laurent&, const Laurent&) = default;

  /// Monomial substitution a -> s_a a^{m00} q^{m01}, q -> s_q a^{m10} q^{m11}.
  Laurent substitute(int sa, int m00, int m01, int sq, int m10, int m11) const {
    Laurent r;
    for (const auto& [k, c] : t_) {
      auto [ea, eq] = k;
      Integer s = c;
      if (sa < 0 && (ea % 2 != 0)) s = -s;
      if (sq < 0 && (eq % 2 != 0)) s = -s;
      r.add(ea * m00 + eq * m10, ea * m01 + eq * m11, s);
    }
    return r;
  }

  /// Exact division by (q - q^{-1}); throws if not divisible.
  Laurent divide_by_q_minus_inverse() const {
    // q - q^{-1} = q^{-1}(q^2 - 1); divide each a-slice by q^2 - 1, then multiply by q.
    Laurent r;
    std::map<int, std::map<int, Integer>> slices;
    for (const auto& [k, c] : t_) slices[k.first][k.second] = c;
    for (auto& [ea, poly] : slices) {
      // long division from the top: c_top q^e = c_top q^{e-2}(q^2-1) + c_top q^{e-2}
      std::map<int, Integer> rem = poly;
      while (!rem.empty()) {
        auto top = std::prev(rem.end());
        int e = top->first;
        Integer c = top->second;
        rem.erase(top);
        if (e - 2 < poly.begin()->first) throw std::domain_error("Laurent: not divisible by q - q^-1");
        r.add(ea, e - 1, c);
        rem[e - 2] += c;
        if (rem[e - 2] == 0) rem.erase(e - 2);
      }
    }
    return r;
  }

  /// Smallest exponents present, for normalization. Requires nonzero.
  Key min_exponents() const {
    if (t_.empty()) throw std::logic_error("Laurent::min_exponents of zero");
    int ma = t_.begin()->first.first, mq = t_.begin()->first.second;
    for (const auto& [k, c] : t_) {
      ma = std::min(ma, k.first);
      mq = std::min(mq, k.second);
    }
    return {ma, mq};
  }

  std::string str(const char* va = "a", const char* vq = "q") const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [k, c] = *it;
      Integer m = abs(c);
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      bool unit = m == 1 && (k.first != 0 || k.second != 0);
      if (!unit) os << m.get_str();
      auto var = [&](const char* v, int e) {
        if (e == 0) return;
        if (!unit) os << "*";
        unit = false;
        os << v;
        if (e != 1) os << "^" << e;
      };
      var(va, k.first);
      var(vq, k.second);
    }
    return os.str();
  }

 private:
  Terms t_;
};

}  // namespace vkr
