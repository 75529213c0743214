#pragma once

#include <map>
#include <utility>
#include <vector>

#include "repring/element.hpp"

namespace repring {

/// Dense integer polynomial, constant term first, trailing zeros trimmed.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static IntPolynomial constant(long v) {
    return IntPolynomial(std::vector<Int>{Int(v)});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Int(0); }
  bool is_zero() const { return c_.empty(); }

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  /// Exact division; throws if the remainder is nonzero.
  IntPolynomial divide_exact(const IntPolynomial& d) const;

  double eval(double x) const;
  Rational eval(const Rational& x) const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<Int> c_;
};

/// Sparse integer polynomial in two variables y, z.
class BivariatePolynomial {
 public:
  using Key = std::pair<int, int>;  // (deg_y, deg_z)

  const std::map<Key, Int>& terms() const { return t_; }
  Int coeff(int dy, int dz) const;
  void add(int dy, int dz, const Int& c);

  BivariatePolynomial operator*(const BivariatePolynomial& o) const;
  bool operator==(const BivariatePolynomial& o) const { return t_ == o.t_; }

  double eval(double y, double z) const;

 private:
  std::map<Key, Int> t_;
};

/// Chebyshev polynomial of the second kind: U_0 = 1, U_1 = 2X,
/// U_j = 2X U_{j-1} - U_{j-2}.
IntPolynomial u_poly(unsigned j);

/// f_j(X) = U_{j-1}(X/2): f_1 = 1, f_2 = X, X f_j = f_{j+1} + f_{j-1}.
IntPolynomial f_poly(unsigned j);

/// Roots of f_j, sorted descending: 2 cos(k pi / j), k = 1..j-1.
/// Each root is located by exact-sign bisection and refined to 1e-12.
std::vector<double> f_roots(unsigned j);

/// Dickson polynomial of the second kind: E_0 = 1, E_1 = z,
/// E_j = z E_{j-1} - y E_{j-2}.
BivariatePolynomial dickson_e(unsigned j);

}  // namespace repring
