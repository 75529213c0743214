#pragma once

#include <optional>
#include <string>
#include <vector>

#include "repring/ideals.hpp"
#include "repring/ring.hpp"

namespace repring {

enum class GammaMethod { sequence, perron_frobenius, species, closed_form };

std::string to_string(GammaMethod m);

struct CertifiedGamma {
  double value = 0;
  GammaMethod method = GammaMethod::closed_form;
  std::string descriptor;  // e.g. "dominant eigenvalue, residual 3e-13"
};

struct GammaReport {
  std::vector<Int> c;       // c_0..c_N
  double upper = 0;         // min over 1<=n<=N of c_n^(1/n)
  std::optional<double> lower_heuristic;
  std::optional<CertifiedGamma> certified;
  std::vector<std::string> method_log;
};

/// c_n = dim core_X(x^n) for n = 0..N, by exact repeated multiplication
/// with core projection after every step.
std::vector<Int> core_dim_sequence(const Element& x, const RepIdeal& ideal,
                                   const RingSpec& ring, int N,
                                   std::size_t support_cap = 100000);

/// n-th root of a non-negative big integer as a double.
double nth_root(const Int& v, int n);

/// Fekete upper bound plus any certified method that applies.
GammaReport gamma_estimate(const Element& x, const RepIdeal& ideal,
                           const RingSpec& ring, int N);

/// Finite index set outside the ideal closed under multiplication by x and
/// x* (equivalently, all indices hit by monomials x^m x*^n), or nullopt on
/// budget exhaustion (x not algebraic within budget).
struct SubringBasis {
  std::vector<BasisId> ids;
};
std::optional<SubringBasis> is_algebraic(const Element& x,
                                         const RepIdeal& ideal,
                                         const RingSpec& ring,
                                         std::size_t budget = 4096);

struct PerronFrobeniusResult {
  double gamma = 0;
  double dominant_eigenvalue = 0;
  double residual = 0;
  std::vector<double> eigenvector;  // positive, indexed like basis.ids
  SubringBasis basis;
};

/// gamma_max(x) as the species value on the Perron-Frobenius eigenvector of
/// multiplication by y = sum of subring basis elements, mod X_max.
PerronFrobeniusResult gamma_pf(const Element& x, const RingSpec& ring);

enum class EndotrivialClass { in_ideal, endotrivial, gamma_ge_sqrt2 };

/// Exact test of x x* - 1 in <X>, classifying per the sqrt(2) trichotomy.
EndotrivialClass endotrivial_test(const Element& x, const RepIdeal& ideal,
                                  const RingSpec& ring);

/// Real root of X^3 - 4X^2 + 4X - 2, approximately 2.839286755.
double alpha_constant();

}  // namespace repring
