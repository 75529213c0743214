#include "repring/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace repring {

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) + o.coeff(k);
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) - o.coeff(k);
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (c_.empty() || o.c_.empty()) return IntPolynomial();
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (std::size_t a = 0; a < c_.size(); ++a)
    for (std::size_t b = 0; b < o.c_.size(); ++b) r[a + b] += c_[a] * o.c_[b];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& d) const {
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  std::vector<Int> rem = c_;
  std::vector<Int> q(rem.size(), Int(0));
  const auto& dc = d.c_;
  while (rem.size() >= dc.size()) {
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.size() < dc.size()) break;
    Int lead = rem.back();
    if (lead % dc.back() != 0)
      throw std::invalid_argument("inexact polynomial division");
    Int f = lead / dc.back();
    std::size_t shift = rem.size() - dc.size();
    q[shift] = f;
    for (std::size_t k = 0; k < dc.size(); ++k) rem[shift + k] -= f * dc[k];
  }
  for (const Int& v : rem)
    if (v != 0) throw std::invalid_argument("inexact polynomial division");
  return IntPolynomial(std::move(q));
}

double IntPolynomial::eval(double x) const {
  double r = 0;
  for (std::size_t k = c_.size(); k-- > 0;) r = r * x + c_[k].get_d();
  return r;
}

Rational IntPolynomial::eval(const Rational& x) const {
  Rational r(0);
  for (std::size_t k = c_.size(); k-- > 0;) r = r * x + Rational(c_[k]);
  return r;
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    Int v = c_[k];
    if (v == 0) continue;
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    first = false;
    Int a = abs(v);
    if (a != 1 || k == 0) os << a.get_str();
    if (k >= 1) {
      os << var;
      if (k >= 2) os << "^" << k;
    }
  }
  return os.str();
}

Int BivariatePolynomial::coeff(int dy, int dz) const {
  auto it = t_.find({dy, dz});
  return it == t_.end() ? Int(0) : it->second;
}

void BivariatePolynomial::add(int dy, int dz, const Int& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(Key{dy, dz}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

BivariatePolynomial BivariatePolynomial::operator*(
    const BivariatePolynomial& o) const {
  BivariatePolynomial r;
  for (const auto& [ka, ca] : t_)
    for (const auto& [kb, cb] : o.t_)
      r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

double BivariatePolynomial::eval(double y, double z) const {
  double r = 0;
  for (const auto& [k, c] : t_)
    r += c.get_d() * std::pow(y, k.first) * std::pow(z, k.second);
  return r;
}

IntPolynomial u_poly(unsigned j) {
  IntPolynomial um1 = IntPolynomial::constant(1);            // U_0
  if (j == 0) return um1;
  IntPolynomial u = IntPolynomial(std::vector<Int>{0, 2});   // U_1
  IntPolynomial two_x = IntPolynomial(std::vector<Int>{0, 2});
  for (unsigned k = 2; k <= j; ++k) {
    IntPolynomial next = two_x * u - um1;
    um1 = std::move(u);
    u = std::move(next);
  }
  return u;
}

IntPolynomial f_poly(unsigned j) {
  if (j == 0) return IntPolynomial();
  IntPolynomial fm1;                                        // f_0 = 0
  IntPolynomial f = IntPolynomial::constant(1);             // f_1
  IntPolynomial x = IntPolynomial(std::vector<Int>{0, 1});
  for (unsigned k = 2; k <= j; ++k) {
    IntPolynomial next = x * f - fm1;
    fm1 = std::move(f);
    f = std::move(next);
  }
  return f;
}

namespace {

int sign_at(const IntPolynomial& p, const Rational& x) {
  Rational v = p.eval(x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

// One root of p in [lo, hi] with p(lo), p(hi) of strict opposite signs.
double bisect_root(const IntPolynomial& p, Rational lo, Rational hi) {
  int slo = sign_at(p, lo);
  for (int it = 0; it < 120; ++it) {
    Rational mid = (lo + hi) / 2;
    int sm = sign_at(p, mid);
    if (sm == 0) return mid.get_d();
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
    if (hi.get_d() - lo.get_d() < 1e-15) break;
  }
  Rational mid = (lo + hi) / 2;
  return mid.get_d();
}

}  // namespace

std::vector<double> f_roots(unsigned j) {
  if (j < 2) return {};
  IntPolynomial f = f_poly(j);
  // The j-1 roots 2cos(k pi / j) are separated by the midpoints
  // 2cos((k + 1/2) pi / j); bracket each with exact sign evaluations at
  // rational points near those midpoints.
  std::vector<double> roots;
  const double pi = 3.14159265358979323846;
  for (unsigned k = 1; k < j; ++k) {
    double lo_hint = 2 * std::cos((k + 0.5) * pi / j);
    double hi_hint = 2 * std::cos((k - 0.5) * pi / j);
    // Snap hints to nearby rationals with exact opposite signs.
    auto snap = [&](double v) {
      return Rational(static_cast<long>(v * (1 << 20)), 1 << 20);
    };
    Rational lo = snap(lo_hint), hi = snap(hi_hint);
    if (lo < -2) lo = -2;
    if (hi > 2) hi = 2;
    // Widen until signs differ (guards hints landing past the root).
    Rational step(1, 1 << 12);
    while (sign_at(f, lo) == 0) lo -= step;
    while (sign_at(f, hi) == 0) hi += step;
    int guard = 0;
    while (sign_at(f, lo) == sign_at(f, hi) && guard++ < 64) {
      lo -= step;
      hi += step;
    }
    roots.push_back(bisect_root(f, lo, hi));
  }
  std::sort(roots.begin(), roots.end(), std::greater<double>());
  return roots;
}

BivariatePolynomial dickson_e(unsigned j) {
  BivariatePolynomial em1;
  em1.add(0, 0, Int(1));  // E_0
  if (j == 0) return em1;
  BivariatePolynomial e;
  e.add(0, 1, Int(1));    // E_1 = z
  for (unsigned k = 2; k <= j; ++k) {
    BivariatePolynomial z, y;
    z.add(0, 1, Int(1));
    y.add(1, 0, Int(1));
    BivariatePolynomial next = z * e;
    BivariatePolynomial sub = y * em1;
    for (const auto& [key, c] : sub.terms()) next.add(key.first, key.second, -c);
    em1 = std::move(e);
    e = std::move(next);
  }
  return e;
}

}  // namespace repring
