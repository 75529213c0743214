#pragma once

#include <optional>
#include <string>
#include <vector>

#include "repring/ideals.hpp"
#include "repring/ring.hpp"

namespace repring {

/// Weighted l^1 norm: sum |a_i| dim(x_i). Exact.
Rational norm_l1(const Element& x, const RingSpec& ring);

/// Quotient norm ||x||_X = sum over i outside X of |a_i| dim(x_i). Exact.
Rational norm_quotient(const Element& x, const RepIdeal& ideal,
                       const RingSpec& ring);

/// Weighted l^2 norm |x| = sqrt(sum n_i |a_i|^2) on the maximal quotient;
/// the squared value is exact, the root is a double.
Rational norm_l2_squared(const Element& x, const RingSpec& ring);
double norm_l2(const Element& x, const RingSpec& ring);

/// <x, y> = Tr(x y*), exact.
Rational inner(const Element& x, const Element& y, const RingSpec& ring);

struct MultBoundCheck {
  double lhs = 0;  // |core_max(x y)|
  double rhs = 0;  // ||x||_max |y|
  bool pass = false;
};

/// |xy| <= ||x||_max |y| (Hilbert action bound).
MultBoundCheck check_mult_bound(const Element& x, const Element& y,
                                const RingSpec& ring);

struct SupNormEstimate {
  double value = 0;
  int iterations = 0;
  int truncation_rank = 0;  // dimension of the finite l^2 space used
  bool truncated = false;   // rule-based ring: value is a lower bound
};

/// ||x||_sup = sup_{|y|=1} |xy| on the weighted l^2 space of the maximal
/// quotient, via power iteration on M* M (M* = multiplication by x*).
/// Rule-based rings are truncated to a support ball around x of the given
/// radius.
SupNormEstimate sup_norm_estimate(const Element& x, const RingSpec& ring,
                                  int iters = 2000, int trunc_radius = 8);

struct QuasinilpotentReport {
  std::vector<double> norm_roots;      // ||x^n||^(1/n), n = 1..N
  std::optional<int> nilpotent_index;  // smallest n <= rank with x^n = 0
  bool consistent = true;  // nonzero in a_max => roots bounded away from 0
};

QuasinilpotentReport quasinilpotent_probe(const Element& x,
                                          const RingSpec& ring, int N);

}  // namespace repring
