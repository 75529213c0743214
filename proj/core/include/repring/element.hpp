#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace repring {

using Int = mpz_class;
using Rational = mpq_class;

/// A basis index local to one ring. Finite rings number their basis 0..r-1
/// in declaration order; rule-based rings assign ids lazily.
using BasisId = std::int32_t;

/// Finitely supported exact-rational linear combination of basis indices.
/// Canonical form: support sorted by id, no zero coefficients stored.
class Element {
 public:
  Element() = default;

  static Element basis(BasisId i) {
    Element e;
    e.terms_.emplace_back(i, Rational(1));
    return e;
  }

  static Element zero() { return Element(); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  const std::vector<std::pair<BasisId, Rational>>& terms() const {
    return terms_;
  }

  Rational coeff(BasisId i) const;
  void set_coeff(BasisId i, const Rational& c);
  void add_term(BasisId i, const Rational& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend Element operator-(const Element& a) {
    Element r = a;
    for (auto& [i, c] : r.terms_) c = -c;
    return r;
  }

  bool operator==(const Element& o) const { return terms_ == o.terms_; }
  bool operator!=(const Element& o) const { return !(*this == o); }

  /// True iff every coefficient is >= 0.
  bool non_negative() const;

  /// True iff every coefficient is an integer.
  bool integral() const;

  void map_ids(const std::function<BasisId(BasisId)>& f);

 private:
  void normalize();
  std::vector<std::pair<BasisId, Rational>> terms_;
};

}  // namespace repring
