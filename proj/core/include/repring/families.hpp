#pragma once

#include <optional>
#include <string>
#include <vector>

#include "repring/chebyshev.hpp"
#include "repring/element.hpp"
#include "repring/ring.hpp"

namespace repring {

enum class Family {
  cyclic_p,
  cyclic_pn,
  frobenius,
  taft,
  sweedler,
  toy_i,
  toy_ii,
  toy_iii,
  z2_z4_integral,
  custom,
};

struct FamilyParams {
  Family family = Family::cyclic_p;
  long p = 0;
  int n = 1;
  long m = 0;
  long d = 1;
  bool subgroup = false;          // Frobenius: quotient-collapsed subring
  long basis_cap = 125;           // cyclic_pn cap on p^n
  std::string path;               // custom: ring JSON file
};

/// Green ring of Z/p in characteristic p: basis J_1..J_p, table generated
/// from the J_2 tensor rule by the f-recurrence and cross-checkable against
/// the Jordan oracle.
RingSpec cyclic_p(long p);

/// Green ring of Z/p^n, full table from the Jordan tensor oracle.
RingSpec cyclic_pn(long p, int n, long cap = 125);

/// Jordan oracle result as an Element of the given cyclic ring.
Element jordan_tensor_oracle(long p, int n, int a, int b,
                             const RingSpec& ring);

/// a(Z/p x| Z/2m) presented as Z[X,Y]/(Y^2m - 1, (X - Y^d - Y^-d) f_p(X)),
/// basis J_j (x) S_i. With subgroup=true, the index-pm subring identified
/// with a(Z/p x| Z/m) (indices with i = d(j-1) mod 2).
RingSpec frobenius(long p, long m, long d, bool subgroup = false);

/// a(H_{2m,n}(q)), the double cover of the generalised Taft algebra ring:
/// Z[X,Y]/(Y^2m - 1, (X - Y^d - Y^-d) f_n(X)) with d = m/n.
RingSpec taft(long m, long n);

/// Nil radical generator (Y^d - Y^-d) f_n(X) of taft(m, n).
Element taft_radical_generator(const RingSpec& taft_ring, long m, long n);

/// Sweedler's four dimensional Hopf algebra: basis S0, S1, P0, P1.
RingSpec sweedler();

enum class ToyKind { i, ii, iii };
RingSpec toy_ring(ToyKind which, long d = 2);

/// The nine-indecomposable integral representation ring of Z_2[Z/4].
RingSpec z2_z4_integral();

/// Quotient presentation Z[X]/(f_q(X)) carrying the tensor-power subring
/// of the natural SL(2,q)-module; only gamma and polynomial identities are
/// exposed; no full product table exists at this level.
struct QuotientPresentation {
  long q = 0;
  long p = 0;  // q = p^m
  int m = 0;
  IntPolynomial minimal_poly;  // f_q
  double gamma = 0;            // largest root, 2cos(pi/q)
  int rank = 0;                // q - 1
};
QuotientPresentation sl2_quotient(long q);

RingSpec build_family(const FamilyParams& params);

/// [J_{p^n+1}][J_j] in a(Z/p^{n+1}) by the classical three-case recursion,
/// used as an independent cross-check of the oracle tables. Returns
/// (block length, multiplicity) pairs.
std::vector<std::pair<int, long>> green_formula_product(long p, int n, int j);

/// Renders an Element of a cyclic-group ring in compact exponent notation,
/// e.g. "8^2 4^2 1" for 2J_8 + 2J_4 + J_1.
std::string render_compact(const Element& e, const RingSpec& ring);

bool is_prime(long p);
std::optional<std::pair<long, int>> prime_power(long q);

}  // namespace repring
