#pragma once

#include <complex>
#include <string>
#include <vector>

#include "repring/ideals.hpp"
#include "repring/ring.hpp"

namespace repring {

/// A ring homomorphism to C on a finite-rank ring, stored by its values on
/// the basis. Flags follow the norm-boundedness classification.
struct Species {
  std::vector<std::complex<double>> values;  // indexed by basis id
  bool dimension_bounded = false;
  bool brauer = false;
  std::string exact_hint;

  std::complex<double> eval(const Element& x) const;
};

struct SpeciesOptions {
  unsigned seed = 0;
  double verify_tol = 1e-8;
  double vanish_tol = 1e-9;
  int max_rank = 512;
};

/// All C-algebra homomorphisms of Q (x) ring (x) C: the exact nil radical is
/// split off first, then multiplication by a seeded generic element of the
/// semisimple quotient is diagonalised and its left eigenvectors are read
/// off as species. Deterministic order (lexicographic on rounded values).
std::vector<Species> enumerate_species(const RingSpec& ring,
                                       const SpeciesOptions& opts = {});

/// X-core boundedness of one species: dimension bounded and vanishing on
/// the ideal.
bool core_bounded(const Species& s, const RepIdeal& ideal,
                  const RingSpec& ring, double vanish_tol = 1e-9);

struct RadicalReport {
  std::vector<Element> basis;  // exact rational elements spanning the radical
  int rank = 0;
};

/// Exact basis of the nil radical of Q (x) ring: the kernel of the trace
/// bilinear form T(a, b) = tr(L_ab), computed by rational elimination.
RadicalReport nilradical(const RingSpec& ring, int max_rank = 512);

struct GammaSpeciesResult {
  double value = 0;
  Species witness;
};

/// gamma_X(x) = max |s(x)| over X-core bounded species, witness included.
/// Requires the quotient by the ideal to be of finite rank.
GammaSpeciesResult gamma_via_species(const Element& x, const RepIdeal& ideal,
                                     const RingSpec& ring,
                                     const SpeciesOptions& opts = {});

enum class TableFormat { text, csv, json };

std::string species_table(const RingSpec& ring, TableFormat format,
                          const SpeciesOptions& opts = {});

struct SymmetryResult {
  bool symmetric = true;
  std::string counterexample;
};

/// Checks s(x*) = conj(s(x)) for every species and basis element.
SymmetryResult symmetry_check(const RingSpec& ring,
                              const SpeciesOptions& opts = {});

enum class IdempotentVerdict { zero, one, nontrivial_trace_in_01, violation };

/// For an exact idempotent e of a ring already quotiented by X_max:
/// Tr(e) must be 0, 1 or strictly between. Throws NotIdempotent if e^2 != e.
IdempotentVerdict idempotent_trace_check(const Element& e,
                                         const RingSpec& quotient);

}  // namespace repring
