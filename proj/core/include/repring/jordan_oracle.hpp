#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "repring/element.hpp"

namespace repring {

/// Jordan type of J_a (x) J_b for the cyclic group of order p^n over F_p:
/// the multiset of Jordan block lengths of the generator acting on the
/// tensor product, as (length, multiplicity) pairs sorted by descending
/// length. Lengths sum to a*b and never exceed p^n.
///
/// Computed from kernel dimensions of powers of the nilpotent part
/// N = g (x) g - 1. With g = 1 + u on k[u]/(u^a) and 1 + v on k[v]/(v^b),
/// N is multiplication by w = u + v + uv on k[u,v]/(u^a, v^b), and
/// dim ker(N^s) equals the colength of the ideal (u^a, v^b, w^s). The local
/// substitution v -> v/(1+u) is a unit change of coordinates carrying that
/// ideal to (u^a, v^b, (u+v)^s), whose colength splits over total degree
/// into nullities of truncated Pascal matrices [C(s, j-i)] mod p.
std::vector<std::pair<int, int>> jordan_tensor_type(long p, int n, int a,
                                                    int b);

/// Same computation without the substitution: dense F_p Gaussian
/// elimination on powers of the matrix of w itself. Quadratic-space and
/// cubic-time, used to cross-check jordan_tensor_type on small inputs.
std::vector<std::pair<int, int>> jordan_tensor_type_dense(long p, int n, int a,
                                                          int b);

}  // namespace repring
