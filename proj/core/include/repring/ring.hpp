#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "repring/element.hpp"

namespace repring {

enum class Err {
  UnknownIndex,
  NotPrime,
  NotPrimePower,
  CapExceeded,
  BadParams,
  OutOfRange,
  ParseError,
  AxiomViolation,
  OrdinaryRing,
  InfiniteComplement,
  NonTerminating,
  RankExceeded,
  NumericalFailure,
  NotAlgebraic,
  NotIdempotent,
  UnsupportedRing,
  BudgetExceeded,
  SyntaxError,
  IoError,
};

class RingError : public std::runtime_error {
 public:
  RingError(Err kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

struct BasisMeta {
  std::string label;
  Int dim;
  BasisId star = -1;
  Int rho_mult = 0;
};

/// A representation ring: free Z-module on a basis with non-negative integer
/// structure constants, star involution, dimension function and a regular
/// element rho given through per-index multiplicities.
///
/// Two backends share this interface: finite rings with an explicit sparse
/// product table, and rule-based rings whose basis is discovered lazily from
/// a pure product rule (results are memoized; safe under concurrent reads).
class RingSpec {
 public:
  /// Rule backend. Keys are the rule's own coordinates for basis indices;
  /// ids are assigned in discovery order, key 0 must be the identity.
  struct Rule {
    std::function<std::optional<BasisMeta>(long key)> meta_of_key;
    std::function<std::optional<long>(const std::string&)> key_of_label;
    std::function<long(long)> star_key;
    /// Product of basis elements as (key, coefficient) terms.
    std::function<std::vector<std::pair<long, Int>>(long, long)> product;
    /// Deterministic enumeration of keys for sampled checks.
    std::function<long(std::size_t)> nth_key;
    std::vector<long> projective_keys;
  };

  static RingSpec finite(std::string name, std::vector<BasisMeta> basis,
                         BasisId identity, bool closed);
  static RingSpec rule_based(std::string name, Rule rule, bool closed);

  const std::string& name() const { return name_; }
  bool closed() const { return closed_; }
  BasisId identity() const { return identity_; }
  bool is_finite() const { return rule_ == nullptr; }
  int rank() const;

  BasisId id_of(const std::string& label) const;
  bool has_label(const std::string& label) const;
  const std::string& label_of(BasisId i) const;
  Int dim(BasisId i) const;
  BasisId star_of(BasisId i) const;
  Int rho_mult(BasisId i) const;

  /// Indices with rho_mult > 0. Finite by axiom even for rule-based rings.
  std::vector<BasisId> projective_ids() const;

  /// Product of two basis elements, memoized for rule-based rings.
  const Element& product(BasisId i, BasisId j) const;

  /// n-th basis id in enumeration order (rule rings may grow the registry).
  BasisId nth_id(std::size_t n) const;

  /// Finite rings only: mutable access for table construction and tests.
  void set_product(BasisId i, BasisId j, Element e);
  const std::deque<BasisMeta>& basis() const { return metas_; }

  void check_id(BasisId i) const;

 private:
  RingSpec() = default;
  std::size_t pair_slot(BasisId i, BasisId j) const;
  BasisId intern_key(long key) const;

  std::string name_;
  bool closed_ = false;
  BasisId identity_ = 0;

  // deque: lazy discovery in rule-based rings must not invalidate
  // references handed out to concurrent readers
  mutable std::deque<BasisMeta> metas_;
  mutable std::unordered_map<std::string, BasisId> by_label_;

  // finite backend
  std::vector<Element> table_;
  bool table_complete_ = false;

  // rule backend
  std::shared_ptr<Rule> rule_;
  mutable std::vector<long> key_of_id_;
  mutable std::unordered_map<long, BasisId> id_of_key_;
  mutable std::unordered_map<std::uint64_t, Element> memo_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();

  friend RingSpec finite_ring_raw(std::string, std::vector<BasisMeta>, BasisId,
                                  bool, std::vector<Element>);
};

/// The element rho = sum rho_mult(i) * x_i.
Element rho_element(const RingSpec& ring);

Element multiply(const Element& a, const Element& b, const RingSpec& ring);
Element star(const Element& a, const RingSpec& ring);
Rational dim_of(const Element& a, const RingSpec& ring);
Rational multiplicity(const Element& a, BasisId i);
Rational trace(const Element& a, const RingSpec& ring);

Element power(const Element& a, unsigned n, const RingSpec& ring);

/// n_i = [x_i x_{i*} : 1], the weight in the l^2 inner product.
Int n_weight(const RingSpec& ring, BasisId i);

std::string to_string(const Element& a, const RingSpec& ring);

struct AxiomCheck {
  std::string axiom;
  bool pass;
  std::string witness;  // empty when pass
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool exhaustive = false;
  unsigned seed = 0;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Checks Definition axioms (i)-(v), (ii') when the ring claims closedness,
/// plus commutativity/associativity spot checks. Finite rings of rank <=
/// exhaustive_cutoff are checked exhaustively; otherwise pairs/triples are
/// sampled within the budget. Failures are report entries, never throws.
AxiomReport verify_axioms(const RingSpec& ring, std::size_t sample_budget = 2000,
                          unsigned seed = 0, int exhaustive_cutoff = 64);

}  // namespace repring
