#include "repring/ideals.hpp"

#include <deque>
#include <sstream>

namespace repring {

RepIdeal RepIdeal::empty() {
  RepIdeal r;
  r.certified_ = true;
  r.desc_ = "{}";
  return r;
}

RepIdeal RepIdeal::explicit_set(std::set<BasisId> members, bool certified,
                                std::string desc) {
  RepIdeal r;
  r.members_ = std::move(members);
  r.certified_ = certified;
  r.desc_ = std::move(desc);
  return r;
}

RepIdeal RepIdeal::predicate(std::function<bool(BasisId)> member,
                             std::string description) {
  RepIdeal r;
  r.pred_ = std::move(member);
  r.certified_ = true;
  r.desc_ = std::move(description);
  return r;
}

bool RepIdeal::contains(BasisId i) const {
  if (pred_) return pred_(i);
  return members_.count(i) > 0;
}

bool RepIdeal::is_empty() const { return !pred_ && members_.empty(); }

const std::set<BasisId>& RepIdeal::members() const {
  if (pred_)
    throw RingError(Err::InfiniteComplement,
                    "predicate ideal has no explicit member set");
  return members_;
}

std::optional<RepIdeal> ideal_closure(const std::set<BasisId>& gens,
                                      const RingSpec& ring,
                                      std::size_t budget) {
  if (gens.empty()) return RepIdeal::empty();
  std::set<BasisId> members;
  std::deque<BasisId> work;
  auto push = [&](BasisId i) {
    if (members.insert(i).second) work.push_back(i);
  };
  for (BasisId g : gens) push(g);
  std::size_t products = 0;
  const bool finite = ring.is_finite();
  // rule-based rings: absorption is probed against an enumeration horizon,
  // overall work capped by the budget
  const std::size_t j_count =
      finite ? static_cast<std::size_t>(ring.rank()) : 256;
  while (!work.empty()) {
    BasisId i = work.front();
    work.pop_front();
    push(ring.star_of(i));
    for (std::size_t jn = 0; jn < j_count; ++jn) {
      BasisId j = ring.nth_id(jn);
      if (!finite && ++products > budget)
        throw RingError(Err::NonTerminating,
                        "ideal closure exceeded product budget");
      for (const auto& [k, c] : ring.product(i, j).terms()) push(k);
    }
    if (members.count(ring.identity())) return std::nullopt;  // Full
  }
  if (members.count(ring.identity())) return std::nullopt;
  return RepIdeal::explicit_set(std::move(members), true);
}

std::optional<std::string> check_ideal(const std::set<BasisId>& members,
                                       const RingSpec& ring) {
  if (members.count(ring.identity())) return "contains the identity";
  for (BasisId i : members) {
    if (!members.count(ring.star_of(i)))
      return "not star-closed at " + ring.label_of(i);
    if (!ring.is_finite())
      continue;  // absorption check only meaningful with a finite horizon
    for (BasisId j = 0; j < ring.rank(); ++j)
      for (const auto& [k, c] : ring.product(i, j).terms())
        if (!members.count(k))
          return "not absorbing: " + ring.label_of(i) + "*" +
                 ring.label_of(j) + " hits " + ring.label_of(k);
  }
  return std::nullopt;
}

RepIdeal x_max(const RingSpec& ring) {
  if (ring.is_finite()) {
    std::set<BasisId> members;
    for (BasisId i = 0; i < ring.rank(); ++i)
      if (n_weight(ring, i) == 0) members.insert(i);
    if (members.empty())
      throw RingError(Err::OrdinaryRing,
                      "ordinary ring: the identity is projective, no "
                      "non-empty representation ideals exist");
    return RepIdeal::explicit_set(std::move(members), true, "max");
  }
  const RingSpec* r = &ring;
  return RepIdeal::predicate(
      [r](BasisId i) { return n_weight(*r, i) == 0; }, "max");
}

RepIdeal x_proj(const RingSpec& ring) {
  if (ring.is_finite()) {
    std::set<BasisId> members;
    for (BasisId i = 0; i < ring.rank(); ++i)
      if (ring.rho_mult(i) > 0) members.insert(i);
    return RepIdeal::explicit_set(std::move(members), true, "proj");
  }
  const RingSpec* r = &ring;
  return RepIdeal::predicate(
      [r](BasisId i) { return r->rho_mult(i) > 0; }, "proj");
}

Element core(const Element& x, const RepIdeal& ideal) {
  Element out;
  for (const auto& [i, c] : x.terms())
    if (!ideal.contains(i)) out.add_term(i, c);
  return out;
}

bool in_ideal_span(const Element& x, const RepIdeal& ideal) {
  return core(x, ideal).is_zero();
}

std::vector<BasisId> complement_ids(const RingSpec& ring,
                                    const RepIdeal& ideal) {
  if (!ring.is_finite())
    throw RingError(Err::InfiniteComplement,
                    "complement requested on a rule-based ring");
  std::vector<BasisId> out;
  for (BasisId i = 0; i < ring.rank(); ++i)
    if (!ideal.contains(i)) out.push_back(i);
  return out;
}

RingSpec quotient_ring(const RingSpec& ring, const RepIdeal& ideal) {
  std::vector<BasisId> keep = complement_ids(ring, ideal);
  std::vector<BasisId> pos(ring.rank(), -1);
  for (std::size_t k = 0; k < keep.size(); ++k)
    pos[keep[k]] = static_cast<BasisId>(k);
  std::vector<BasisMeta> basis;
  for (BasisId old : keep) {
    BasisMeta m = ring.basis()[old];
    m.star = pos[m.star];  // star-closed ideal => complement star-closed
    m.rho_mult = 0;        // projectives live inside any non-empty ideal
    basis.push_back(std::move(m));
  }
  if (ideal.is_empty())
    for (std::size_t k = 0; k < keep.size(); ++k)
      basis[k].rho_mult = ring.rho_mult(keep[k]);
  RingSpec out =
      RingSpec::finite(ring.name() + "/" + (ideal.description().empty()
                                                ? "ideal"
                                                : ideal.description()),
                       std::move(basis), pos[ring.identity()], ring.closed());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = a; b < keep.size(); ++b) {
      Element e;
      for (const auto& [k, c] : ring.product(keep[a], keep[b]).terms())
        if (pos[k] >= 0) e.add_term(pos[k], c);
      out.set_product(static_cast<BasisId>(a), static_cast<BasisId>(b),
                      std::move(e));
    }
  return out;
}

RepIdeal parse_ideal(const std::string& text, const RingSpec& ring,
                     bool allow_closure) {
  if (text == "proj") return x_proj(ring);
  if (text == "max") return x_max(ring);
  if (text.empty() || text == "none" || text == "{}") return RepIdeal::empty();
  if (text.front() != '{' || text.back() != '}')
    throw RingError(Err::ParseError,
                    "ideal must be proj, max, none or {label,...}");
  std::set<BasisId> members;
  std::string body = text.substr(1, text.size() - 2);
  std::istringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty()) members.insert(ring.id_of(tok));
  }
  if (allow_closure) {
    auto closed = ideal_closure(members, ring);
    if (!closed)
      throw RingError(Err::BadParams,
                      "closure of the given set is the whole ring");
    return *closed;
  }
  if (auto why = check_ideal(members, ring))
    throw RingError(Err::BadParams,
                    "set is not a representation ideal (" + *why +
                        "); pass --close to take the closure");
  return RepIdeal::explicit_set(std::move(members), true);
}

}  // namespace repring
