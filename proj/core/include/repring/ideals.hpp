#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>

#include "repring/ring.hpp"

namespace repring {

/// A representation ideal: a proper, star-closed, multiplication-absorbing
/// subset of the basis, as an explicit finite set or a membership predicate
/// (rule-based rings).
class RepIdeal {
 public:
  static RepIdeal empty();
  static RepIdeal explicit_set(std::set<BasisId> members, bool certified,
                               std::string desc = "");
  static RepIdeal predicate(std::function<bool(BasisId)> member,
                            std::string description);

  bool contains(BasisId i) const;
  bool is_empty() const;
  bool is_explicit() const { return !pred_; }
  const std::set<BasisId>& members() const;
  bool closure_certified() const { return certified_; }
  const std::string& description() const { return desc_; }

 private:
  std::set<BasisId> members_;
  std::function<bool(BasisId)> pred_;
  bool certified_ = false;
  std::string desc_;
};

/// Smallest star-closed absorbing superset of gens; nullopt means the
/// closure reached the identity, i.e. the only absorbing superset is full.
std::optional<RepIdeal> ideal_closure(const std::set<BasisId>& gens,
                                      const RingSpec& ring,
                                      std::size_t budget = 10000);

/// Checks the three ideal conditions for an explicit set (exhaustively on
/// finite rings). Returns an explanation on failure.
std::optional<std::string> check_ideal(const std::set<BasisId>& members,
                                       const RingSpec& ring);

/// X_max = {i : [x_i x_i* : 1] = 0}. Throws OrdinaryRing when empty.
RepIdeal x_max(const RingSpec& ring);

/// X_proj = {i : rho_mult(i) > 0}.
RepIdeal x_proj(const RingSpec& ring);

/// Projection away from ideal indices (coefficient-wise, defined on
/// arbitrary elements as the unique linear extension).
Element core(const Element& x, const RepIdeal& ideal);

bool in_ideal_span(const Element& x, const RepIdeal& ideal);

/// Quotient ring on the complement of the ideal with products composed
/// with core. Finite complements only.
RingSpec quotient_ring(const RingSpec& ring, const RepIdeal& ideal);

/// Ids of the complement of the ideal, in basis order (finite rings).
std::vector<BasisId> complement_ids(const RingSpec& ring,
                                    const RepIdeal& ideal);

/// Parses "proj", "max", "none" or "{J5,J4}" against a ring. Set literals
/// must already be closed unless allow_closure is set.
RepIdeal parse_ideal(const std::string& text, const RingSpec& ring,
                     bool allow_closure = false);

}  // namespace repring
