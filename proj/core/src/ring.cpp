#include "repring/ring.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace repring {

RingSpec RingSpec::finite(std::string name, std::vector<BasisMeta> basis,
                          BasisId identity, bool closed) {
  RingSpec r;
  r.name_ = std::move(name);
  r.metas_.assign(std::make_move_iterator(basis.begin()),
                  std::make_move_iterator(basis.end()));
  r.identity_ = identity;
  r.closed_ = closed;
  const int n = static_cast<int>(r.metas_.size());
  if (identity < 0 || identity >= n)
    throw RingError(Err::BadParams, "identity index out of range");
  for (int i = 0; i < n; ++i) {
    const auto& m = r.metas_[i];
    if (m.dim < 1) throw RingError(Err::BadParams, "dim must be >= 1");
    if (m.star < 0 || m.star >= n)
      throw RingError(Err::BadParams, "star partner out of range");
    if (!r.by_label_.emplace(m.label, i).second)
      throw RingError(Err::BadParams, "duplicate label " + m.label);
  }
  r.table_.resize(static_cast<std::size_t>(n) * (n + 1) / 2);
  return r;
}

RingSpec RingSpec::rule_based(std::string name, Rule rule, bool closed) {
  RingSpec r;
  r.name_ = std::move(name);
  r.rule_ = std::make_shared<Rule>(std::move(rule));
  r.closed_ = closed;
  r.identity_ = r.intern_key(0);
  return r;
}

int RingSpec::rank() const {
  if (!is_finite())
    throw RingError(Err::InfiniteComplement, "rule-based ring has no rank");
  return static_cast<int>(metas_.size());
}

std::size_t RingSpec::pair_slot(BasisId i, BasisId j) const {
  if (i > j) std::swap(i, j);
  // row-major over pairs with i <= j: row i starts at i*n - i*(i-1)/2
  const std::size_t n = metas_.size();
  const std::size_t ii = static_cast<std::size_t>(i);
  return ii * n - ii * (ii - 1) / 2 + (static_cast<std::size_t>(j) - ii);
}

void RingSpec::check_id(BasisId i) const {
  std::size_t size;
  if (rule_) {
    std::lock_guard lk(*mu_);
    size = metas_.size();
  } else {
    size = metas_.size();
  }
  if (i < 0 || static_cast<std::size_t>(i) >= size)
    throw RingError(Err::UnknownIndex,
                    "basis id " + std::to_string(i) + " not in ring " + name_);
}

BasisId RingSpec::intern_key(long key) const {
  std::lock_guard lk(*mu_);
  auto it = id_of_key_.find(key);
  if (it != id_of_key_.end()) return it->second;
  auto meta = rule_->meta_of_key(key);
  if (!meta)
    throw RingError(Err::UnknownIndex,
                    "key " + std::to_string(key) + " not in ring " + name_);
  BasisId id = static_cast<BasisId>(metas_.size());
  metas_.push_back(*meta);
  metas_.back().star = -1;  // resolved lazily via star_of
  key_of_id_.push_back(key);
  id_of_key_.emplace(key, id);
  by_label_.emplace(metas_.back().label, id);
  return id;
}

BasisId RingSpec::id_of(const std::string& label) const {
  {
    std::unique_lock lk(*mu_, std::defer_lock);
    if (rule_) lk.lock();
    auto it = by_label_.find(label);
    if (it != by_label_.end()) return it->second;
  }
  if (rule_) {
    auto key = rule_->key_of_label(label);
    if (key) return intern_key(*key);
  }
  throw RingError(Err::UnknownIndex,
                  "label '" + label + "' not in ring " + name_);
}

bool RingSpec::has_label(const std::string& label) const {
  {
    std::unique_lock lk(*mu_, std::defer_lock);
    if (rule_) lk.lock();
    if (by_label_.count(label)) return true;
  }
  return rule_ && rule_->key_of_label(label).has_value();
}

const std::string& RingSpec::label_of(BasisId i) const {
  check_id(i);
  return metas_[i].label;
}

Int RingSpec::dim(BasisId i) const {
  check_id(i);
  return metas_[i].dim;
}

BasisId RingSpec::star_of(BasisId i) const {
  check_id(i);
  if (!rule_) return metas_[i].star;
  long key;
  {
    std::lock_guard lk(*mu_);
    if (metas_[i].star >= 0) return metas_[i].star;
    key = key_of_id_[i];
  }
  BasisId s = intern_key(rule_->star_key(key));
  std::lock_guard lk(*mu_);
  metas_[i].star = s;
  return s;
}

Int RingSpec::rho_mult(BasisId i) const {
  check_id(i);
  return metas_[i].rho_mult;
}

std::vector<BasisId> RingSpec::projective_ids() const {
  std::vector<BasisId> out;
  if (rule_) {
    for (long k : rule_->projective_keys) out.push_back(intern_key(k));
  } else {
    for (BasisId i = 0; i < static_cast<BasisId>(metas_.size()); ++i)
      if (metas_[i].rho_mult > 0) out.push_back(i);
  }
  return out;
}

const Element& RingSpec::product(BasisId i, BasisId j) const {
  check_id(i);
  check_id(j);
  if (i > j) std::swap(i, j);
  if (!rule_) return table_[pair_slot(i, j)];

  const std::uint64_t slot =
      (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
  {
    std::lock_guard lk(*mu_);
    auto it = memo_.find(slot);
    if (it != memo_.end()) return it->second;
  }
  long ki, kj;
  {
    std::lock_guard lk(*mu_);
    ki = key_of_id_[i];
    kj = key_of_id_[j];
  }
  auto terms = rule_->product(ki, kj);
  Element e;
  for (const auto& [k, c] : terms) e.add_term(intern_key(k), Rational(c));
  std::lock_guard lk(*mu_);
  return memo_.emplace(slot, std::move(e)).first->second;
}

BasisId RingSpec::nth_id(std::size_t n) const {
  if (!rule_) {
    if (n >= metas_.size())
      throw RingError(Err::OutOfRange, "basis index out of range");
    return static_cast<BasisId>(n);
  }
  return intern_key(rule_->nth_key(n));
}

void RingSpec::set_product(BasisId i, BasisId j, Element e) {
  if (rule_)
    throw RingError(Err::BadParams, "cannot set products on rule-based ring");
  check_id(i);
  check_id(j);
  table_[pair_slot(i, j)] = std::move(e);
}

Element rho_element(const RingSpec& ring) {
  Element rho;
  for (BasisId i : ring.projective_ids())
    rho.add_term(i, Rational(ring.rho_mult(i)));
  return rho;
}

Element multiply(const Element& a, const Element& b, const RingSpec& ring) {
  Element out;
  for (const auto& [i, ci] : a.terms()) {
    for (const auto& [j, cj] : b.terms()) {
      const Element& p = ring.product(i, j);
      Rational c = ci * cj;
      for (const auto& [k, ck] : p.terms()) out.add_term(k, c * ck);
    }
  }
  return out;
}

Element star(const Element& a, const RingSpec& ring) {
  Element out;
  for (const auto& [i, c] : a.terms()) out.add_term(ring.star_of(i), c);
  return out;
}

Rational dim_of(const Element& a, const RingSpec& ring) {
  Rational d(0);
  for (const auto& [i, c] : a.terms()) d += c * Rational(ring.dim(i));
  return d;
}

Rational multiplicity(const Element& a, BasisId i) { return a.coeff(i); }

Rational trace(const Element& a, const RingSpec& ring) {
  return a.coeff(ring.identity());
}

Element power(const Element& a, unsigned n, const RingSpec& ring) {
  Element acc = Element::basis(ring.identity());
  for (unsigned k = 0; k < n; ++k) acc = multiply(acc, a, ring);
  return acc;
}

Int n_weight(const RingSpec& ring, BasisId i) {
  const Element& p = ring.product(i, ring.star_of(i));
  Rational c = p.coeff(ring.identity());
  return c.get_num();
}

std::string to_string(const Element& a, const RingSpec& ring) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : a.terms()) {
    Rational v = c;
    if (!first) {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) v = -v;
    } else if (v < 0) {
      os << "-";
      v = -v;
    }
    first = false;
    if (v != 1) os << v.get_str() << "*";
    os << ring.label_of(i);
  }
  return os.str();
}

namespace {

struct Sampler {
  const RingSpec& ring;
  std::mt19937 rng;
  std::size_t pool;

  Sampler(const RingSpec& r, unsigned seed, std::size_t pool_size)
      : ring(r), rng(seed), pool(pool_size) {}

  BasisId draw() {
    std::uniform_int_distribution<std::size_t> d(0, pool - 1);
    return ring.nth_id(d(rng));
  }
};

std::string pair_witness(const RingSpec& r, BasisId i, BasisId j) {
  return "(" + r.label_of(i) + ", " + r.label_of(j) + ")";
}

}  // namespace

AxiomReport verify_axioms(const RingSpec& ring, std::size_t sample_budget,
                          unsigned seed, int exhaustive_cutoff) {
  AxiomReport rep;
  rep.seed = seed;
  const bool finite = ring.is_finite();
  const int rank = finite ? ring.rank() : 0;
  rep.exhaustive = finite && rank <= exhaustive_cutoff;

  std::vector<std::pair<BasisId, BasisId>> pairs;
  std::vector<BasisId> singles;
  if (rep.exhaustive) {
    for (BasisId i = 0; i < rank; ++i) {
      singles.push_back(i);
      for (BasisId j = i; j < rank; ++j) pairs.emplace_back(i, j);
    }
  } else {
    Sampler s(ring, seed, finite ? rank : 64);
    std::size_t n_singles = std::min<std::size_t>(sample_budget / 4, 256);
    for (std::size_t k = 0; k < n_singles; ++k) singles.push_back(s.draw());
    for (std::size_t k = 0; k < sample_budget; ++k)
      pairs.emplace_back(s.draw(), s.draw());
    std::sort(singles.begin(), singles.end());
    singles.erase(std::unique(singles.begin(), singles.end()), singles.end());
  }

  auto add = [&rep](std::string axiom, bool pass, std::string witness) {
    rep.checks.push_back({std::move(axiom), pass, std::move(witness)});
  };

  // structure constants: non-negative integers
  {
    bool ok = true;
    std::string w;
    for (const auto& [i, j] : pairs) {
      const Element& p = ring.product(i, j);
      for (const auto& [k, c] : p.terms()) {
        if (c < 0 || c.get_den() != 1) {
          ok = false;
          w = pair_witness(ring, i, j) + " -> coefficient " + c.get_str() +
              " at " + ring.label_of(k);
          break;
        }
      }
      if (!ok) break;
    }
    add("non-negative integer structure constants", ok, w);
  }

  // commutativity of the stored/returned products
  {
    bool ok = true;
    std::string w;
    for (const auto& [i, j] : pairs) {
      if (ring.product(i, j) != ring.product(j, i)) {
        ok = false;
        w = pair_witness(ring, i, j);
        break;
      }
    }
    add("commutativity", ok, w);
  }

  // associativity spot check on sampled triples
  {
    bool ok = true;
    std::string w;
    std::mt19937 rng(seed + 1);
    std::size_t n_triples =
        rep.exhaustive ? std::min<std::size_t>(pairs.size(), 400)
                       : sample_budget / 4;
    std::uniform_int_distribution<std::size_t> d(0, singles.size() - 1);
    for (std::size_t t = 0; t < n_triples && ok; ++t) {
      BasisId i = singles[d(rng)], j = singles[d(rng)], k = singles[d(rng)];
      Element xi = Element::basis(i), xj = Element::basis(j),
              xk = Element::basis(k);
      Element lhs = multiply(multiply(xi, xj, ring), xk, ring);
      Element rhs = multiply(xi, multiply(xj, xk, ring), ring);
      if (lhs != rhs) {
        ok = false;
        w = "(" + ring.label_of(i) + ", " + ring.label_of(j) + ", " +
            ring.label_of(k) + ")";
      }
    }
    add("associativity (sampled triples)", ok, w);
  }

  // (i) star is an involution and a ring automorphism
  {
    bool ok = true;
    std::string w;
    for (BasisId i : singles) {
      if (ring.star_of(ring.star_of(i)) != i) {
        ok = false;
        w = ring.label_of(i);
        break;
      }
    }
    add("(i) star involution", ok, w);
  }
  {
    bool ok = true;
    std::string w;
    for (const auto& [i, j] : pairs) {
      Element lhs = star(ring.product(i, j), ring);
      Element rhs = multiply(Element::basis(ring.star_of(i)),
                             Element::basis(ring.star_of(j)), ring);
      if (lhs != rhs) {
        ok = false;
        w = pair_witness(ring, i, j);
        break;
      }
    }
    add("(i) star automorphism", ok, w);
  }

  // (ii) [x_i x_j : 1] > 0 implies j = i*, and (ii') multiplicity one
  {
    bool ok = true, okc = true;
    std::string w, wc;
    for (const auto& [i, j] : pairs) {
      Rational c = trace(ring.product(i, j), ring);
      if (c > 0 && j != ring.star_of(i)) {
        if (ok) w = pair_witness(ring, i, j);
        ok = false;
      }
      if (c > 0 && c != 1) {
        if (okc) wc = pair_witness(ring, i, j) + " multiplicity " + c.get_str();
        okc = false;
      }
    }
    add("(ii) [x_i x_j : 1] > 0 => j = i*", ok, w);
    if (ring.closed()) add("(ii') closed: [x_i x_i* : 1] = 1", okc, wc);
  }

  // (iii) if [x_i x_i* : 1] = 0 then [x_i x_i* x_i : x_i] >= 2,
  // and the lemma [x_i x_i* x_i : x_i] > 0 in all cases
  {
    bool ok3 = true, okl = true;
    std::string w3, wl;
    for (BasisId i : singles) {
      BasisId is = ring.star_of(i);
      Element xii = ring.product(i, is);
      Element xiii = multiply(xii, Element::basis(i), ring);
      Rational m = xiii.coeff(i);
      if (trace(xii, ring) == 0 && m < 2) {
        if (ok3) w3 = ring.label_of(i);
        ok3 = false;
      }
      if (m <= 0) {
        if (okl) wl = ring.label_of(i);
        okl = false;
      }
    }
    add("(iii) n_i = 0 => [x_i x_i* x_i : x_i] >= 2", ok3, w3);
    add("lemma [x_i x_i* x_i : x_i] > 0", okl, wl);
  }

  // (iv) dimension function: positive, star-invariant, multiplicative
  {
    bool ok = true;
    std::string w;
    for (BasisId i : singles) {
      if (ring.dim(i) < 1 || ring.dim(i) != ring.dim(ring.star_of(i))) {
        ok = false;
        w = ring.label_of(i);
        break;
      }
    }
    add("(iv) dim >= 1 and dim(i) = dim(i*)", ok, w);
  }
  {
    bool ok = true;
    std::string w;
    for (const auto& [i, j] : pairs) {
      if (dim_of(ring.product(i, j), ring) !=
          Rational(ring.dim(i)) * Rational(ring.dim(j))) {
        ok = false;
        w = pair_witness(ring, i, j);
        break;
      }
    }
    add("(iv) dim multiplicative", ok, w);
  }

  // (v) rho absorption: x_i rho = dim(x_i) rho, rho nonzero
  {
    Element rho = rho_element(ring);
    bool ok = !rho.is_zero();
    std::string w = ok ? "" : "rho = 0";
    if (ok) {
      for (BasisId i : singles) {
        Element lhs = multiply(Element::basis(i), rho, ring);
        Element rhs = Rational(ring.dim(i)) * rho;
        if (lhs != rhs) {
          ok = false;
          w = ring.label_of(i);
          break;
        }
      }
    }
    add("(v) x_i rho = dim(x_i) rho", ok, w);
  }

  return rep;
}

}  // namespace repring
