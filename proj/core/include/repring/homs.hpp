#pragma once

#include <map>
#include <vector>

#include "repring/chebyshev.hpp"
#include "repring/ring.hpp"
#include "repring/species.hpp"

namespace repring {

/// F-spectrum of the length-j Jordan block for Z/p^{n+1} relative to its
/// central Z/p: F_i(M) = (Ker X & Im X^{i-1}) / (Ker X & Im X^i) with the
/// induced Z/p^n-action, computed by F_p row reduction on explicit
/// generator matrices. f[i-1] is an Element of the target ring a(Z/p^n).
struct FSpectrum {
  std::vector<Element> f;
};

FSpectrum f_spectrum(long p, int n, int j, const RingSpec& target);

/// s_hat_0: a(Z/p^{n+1}) -> a(Z/p^n), [J_{2bp^n +- r}] -> 2b[J_{p^n}] +- [J_r].
Element s_hat0(long p, int n, const Element& x, const RingSpec& source,
               const RingSpec& target);

/// Image of an integral element under s_hat_ell with exact coefficients:
/// polynomials in c = 2cos(ell pi / p), reduced mod f_p. For ell = 0 the
/// polynomials are the constants of s_hat0.
using PolyElement = std::map<BasisId, IntPolynomial>;

PolyElement s_hat_image(long p, int n, int ell, const Element& x,
                        const RingSpec& source, const RingSpec& target);

/// Product of two exact images inside a(Z/p^n)[c]/(f_p(c)).
PolyElement poly_element_multiply(const PolyElement& a, const PolyElement& b,
                                  const RingSpec& target, long p);

std::map<BasisId, double> poly_element_eval(const PolyElement& a, double c);

/// Composite species s_{ell[0]} s_hat_{ell[1]} ... s_hat_{ell[n-1]} of
/// a(Z/p^n), evaluated numerically on the whole basis (exact cyclotomic
/// carrying internally, rounded only here).
Species species_chain(long p, int n, const std::vector<int>& ells,
                      const RingSpec& ring);

/// All p^n chain species, rightmost index varying slowest.
std::vector<Species> all_species_chains(long p, int n, const RingSpec& ring);

/// Adams operation psi^t on a(Z/p): psi[J_2] = [J_{r+1}] - [J_{r-1}] after
/// reducing t by psi^{2p-t} = psi^{2p+t} = psi^t and Frobenius triviality,
/// extended as a ring homomorphism through f_j([J_2]) = [J_j].
Element psi(long t, const Element& x, const RingSpec& cyclic_ring, long p);

}  // namespace repring
