#include "repring/families.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "repring/jordan_oracle.hpp"
#include "repring/ring_io.hpp"

namespace repring {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::optional<std::pair<long, int>> prime_power(long q) {
  if (q < 2) return std::nullopt;
  for (long p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    long r = q;
    int m = 0;
    while (r % p == 0) {
      r /= p;
      ++m;
    }
    if (r != 1) return std::nullopt;
    return std::make_pair(p, m);
  }
  return std::make_pair(q, 1);  // q itself prime
}

namespace {

std::string j_label(int j) { return "J" + std::to_string(j); }

std::vector<BasisMeta> jordan_basis(int count, int proj_block) {
  std::vector<BasisMeta> basis(count);
  for (int j = 1; j <= count; ++j) {
    basis[j - 1].label = j_label(j);
    basis[j - 1].dim = j;
    basis[j - 1].star = j - 1;  // all Jordan blocks self-dual
    basis[j - 1].rho_mult = (j == proj_block) ? 1 : 0;
  }
  return basis;
}

}  // namespace

RingSpec cyclic_p(long p) {
  if (!is_prime(p)) throw RingError(Err::NotPrime, "p must be prime");
  const int r = static_cast<int>(p);
  RingSpec ring = RingSpec::finite("a(Z/" + std::to_string(p) + ")",
                                   jordan_basis(r, r), 0, /*closed=*/true);
  auto J = [](int j) { return Element::basis(j - 1); };
  // row J_1 and the J_2 rule
  for (int j = 1; j <= r; ++j) ring.set_product(0, j - 1, J(j));
  if (r >= 2) {
    for (int j = 2; j <= r; ++j) {
      Element e = (j < r) ? J(j - 1) + J(j + 1) : Rational(2) * J(r);
      ring.set_product(1, j - 1, e);
    }
  }
  // J_i J_j = J_2 (J_{i-1} J_j) - J_{i-2} J_j via f_i = X f_{i-1} - f_{i-2}
  for (int i = 3; i <= r; ++i) {
    for (int j = i; j <= r; ++j) {
      Element t = multiply(J(2), ring.product(i - 2, j - 1), ring);
      t -= ring.product(i - 3, j - 1);
      ring.set_product(i - 1, j - 1, std::move(t));
    }
  }
  // cross-check the recurrence-built table against the Jordan oracle:
  // every pair at desk scale; for large p the rows with a <= 8, whose
  // oracle cost stays linear in p (they generate the table anyway)
  const int a_cap = p <= 13 ? r : 8;
  for (int a = 1; a <= a_cap; ++a)
    for (int b = a; b <= r; ++b)
      if (ring.product(a - 1, b - 1) != jordan_tensor_oracle(p, 1, a, b, ring))
        throw RingError(Err::NumericalFailure,
                        "cyclic_p table disagrees with the Jordan oracle");
  return ring;
}

Element jordan_tensor_oracle(long p, int n, int a, int b,
                             const RingSpec& ring) {
  auto type = jordan_tensor_type(p, n, a, b);
  Element e;
  for (const auto& [len, mult] : type)
    e.add_term(ring.id_of(j_label(len)), Rational(mult));
  return e;
}

RingSpec cyclic_pn(long p, int n, long cap) {
  if (!is_prime(p)) throw RingError(Err::NotPrime, "p must be prime");
  if (n < 1) throw RingError(Err::BadParams, "n must be >= 1");
  long pn = 1;
  for (int k = 0; k < n; ++k) {
    pn *= p;
    if (pn > cap)
      throw RingError(Err::CapExceeded,
                      "p^n exceeds cap " + std::to_string(cap));
  }
  const int r = static_cast<int>(pn);
  RingSpec ring =
      RingSpec::finite("a(Z/" + std::to_string(pn) + ")", jordan_basis(r, r),
                       0, /*closed=*/true);
  for (int a = 1; a <= r; ++a)
    for (int b = a; b <= r; ++b)
      ring.set_product(a - 1, b - 1, jordan_tensor_oracle(p, n, a, b, ring));
  return ring;
}

namespace {

// Shared constructor for a(Z/p x| Z/2m) and a(H_{2m,n}(q)): basis
// J_j (x) S_i with 1 <= j <= L, i in Z/2m, X acting by the f-recurrence
// with the top rule X J_L = J_L S_d + J_L S_-d.
class ChainRingBuilder {
 public:
  ChainRingBuilder(int L, long two_m, long d)
      : L_(L), two_m_(two_m), d_(((d % two_m) + two_m) % two_m) {}

  int id(int j, long i) const {
    i = ((i % two_m_) + two_m_) % two_m_;
    return static_cast<int>((j - 1) * two_m_ + i);
  }

  std::string label(int j, long i) const {
    i = ((i % two_m_) + two_m_) % two_m_;
    if (j == 1) return "S" + std::to_string(i);
    std::string s = "J" + std::to_string(j);
    if (i != 0) s += "S" + std::to_string(i);
    return s;
  }

  std::vector<BasisMeta> basis() const {
    std::vector<BasisMeta> out(static_cast<std::size_t>(L_) * two_m_);
    for (int j = 1; j <= L_; ++j)
      for (long i = 0; i < two_m_; ++i) {
        BasisMeta& m = out[id(j, i)];
        m.label = label(j, i);
        m.dim = j;
        m.star = id(j, -i);
        m.rho_mult = (j == L_) ? 1 : 0;
      }
    return out;
  }

  // X * (J_j S_i) expressed in coefficient matrix form
  void mul_x(std::vector<std::vector<Int>>& c) const {
    std::vector<std::vector<Int>> out(L_ + 1,
                                      std::vector<Int>(two_m_, Int(0)));
    for (int j = 1; j <= L_; ++j)
      for (long i = 0; i < two_m_; ++i) {
        const Int& v = c[j][i];
        if (v == 0) continue;
        if (j < L_) {
          out[j + 1][i] += v;
          if (j > 1) out[j - 1][i] += v;
        } else {
          out[L_][(i + d_) % two_m_] += v;
          out[L_][((i - d_) % two_m_ + two_m_) % two_m_] += v;
        }
      }
    c = std::move(out);
  }

  Element product(int j1, long i1, int j2, long i2) const {
    // f_{j1}(X) applied to J_{j2} S_{i1+i2} via P_k = X P_{k-1} - P_{k-2}
    std::vector<std::vector<Int>> pm1(L_ + 1, std::vector<Int>(two_m_, 0));
    std::vector<std::vector<Int>> pk = pm1;
    pk[j2][((i1 + i2) % two_m_ + two_m_) % two_m_] = 1;
    for (int k = 2; k <= j1; ++k) {
      auto next = pk;
      mul_x(next);
      for (int j = 1; j <= L_; ++j)
        for (long i = 0; i < two_m_; ++i) next[j][i] -= pm1[j][i];
      pm1 = std::move(pk);
      pk = std::move(next);
    }
    Element e;
    for (int j = 1; j <= L_; ++j)
      for (long i = 0; i < two_m_; ++i)
        if (pk[j][i] != 0) e.add_term(id(j, i), Rational(pk[j][i]));
    return e;
  }

  RingSpec build(const std::string& name) const {
    RingSpec ring = RingSpec::finite(name, basis(), id(1, 0), /*closed=*/true);
    for (int j1 = 1; j1 <= L_; ++j1)
      for (long i1 = 0; i1 < two_m_; ++i1)
        for (int j2 = j1; j2 <= L_; ++j2)
          for (long i2 = 0; i2 < two_m_; ++i2) {
            int a = id(j1, i1), b = id(j2, i2);
            if (a > b) continue;
            ring.set_product(a, b, product(j1, i1, j2, i2));
          }
    return ring;
  }

  // subring of indices with i = d(j-1) mod 2 (the collapsed quotient)
  std::vector<int> subgroup_ids() const {
    std::vector<int> keep;
    for (int j = 1; j <= L_; ++j)
      for (long i = 0; i < two_m_; ++i)
        if (((i - d_ * (j - 1)) % 2 + 2) % 2 == 0) keep.push_back(id(j, i));
    return keep;
  }

 private:
  int L_;
  long two_m_;
  long d_;
};

RingSpec subring_on(const RingSpec& ring, const std::vector<int>& keep,
                    const std::string& name) {
  std::vector<int> pos(ring.rank(), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = static_cast<int>(k);
  std::vector<BasisMeta> basis;
  for (int old : keep) {
    BasisMeta m = ring.basis()[old];
    if (pos[m.star] < 0)
      throw RingError(Err::BadParams, "subring not star-closed");
    m.star = pos[m.star];
    basis.push_back(std::move(m));
  }
  if (pos[ring.identity()] < 0)
    throw RingError(Err::BadParams, "subring must contain the identity");
  RingSpec out = RingSpec::finite(name, std::move(basis),
                                  pos[ring.identity()], ring.closed());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = a; b < keep.size(); ++b) {
      Element e = ring.product(keep[a], keep[b]);
      Element mapped;
      for (const auto& [k, c] : e.terms()) {
        if (pos[k] < 0)
          throw RingError(Err::BadParams,
                          "subring not multiplicatively closed");
        mapped.add_term(pos[k], c);
      }
      out.set_product(static_cast<int>(a), static_cast<int>(b),
                      std::move(mapped));
    }
  return out;
}

}  // namespace

RingSpec frobenius(long p, long m, long d, bool subgroup) {
  if (!is_prime(p)) throw RingError(Err::NotPrime, "p must be prime");
  if (m < 1 || m % p == 0)
    throw RingError(Err::BadParams, "m must be positive and coprime to p");
  ChainRingBuilder b(static_cast<int>(p), 2 * m, d);
  std::ostringstream name;
  name << "a(Z/" << p << ":Z/" << (subgroup ? m : 2 * m) << ",d=" << d << ")";
  RingSpec full = b.build(name.str());
  if (!subgroup) return full;
  return subring_on(full, b.subgroup_ids(), name.str());
}

RingSpec taft(long m, long n) {
  if (n < 2 || m < n || m % n != 0)
    throw RingError(Err::BadParams, "need n >= 2 and n | m");
  ChainRingBuilder b(static_cast<int>(n), 2 * m, m / n);
  std::ostringstream name;
  name << "a(H_{" << 2 * m << "," << n << "})";
  return b.build(name.str());
}

Element taft_radical_generator(const RingSpec& taft_ring, long m, long n) {
  const long d = m / n;
  auto lab = [&](long i) {
    i = ((i % (2 * m)) + 2 * m) % (2 * m);
    std::string s = "J" + std::to_string(n);
    if (i != 0) s += "S" + std::to_string(i);
    return s;
  };
  Element e = Element::basis(taft_ring.id_of(lab(d)));
  e -= Element::basis(taft_ring.id_of(lab(-d)));
  return e;
}

RingSpec sweedler() {
  std::vector<BasisMeta> basis(4);
  basis[0] = {"S0", Int(1), 0, Int(0)};
  basis[1] = {"S1", Int(1), 1, Int(0)};
  basis[2] = {"P0", Int(2), 2, Int(1)};
  basis[3] = {"P1", Int(2), 3, Int(1)};
  RingSpec r = RingSpec::finite("a(Sweedler)", std::move(basis), 0, true);
  auto E = [](int i) { return Element::basis(i); };
  for (int j = 0; j < 4; ++j) r.set_product(0, j, E(j));
  r.set_product(1, 1, E(0));
  r.set_product(1, 2, E(3));
  r.set_product(1, 3, E(2));
  r.set_product(2, 2, E(2) + E(3));
  r.set_product(2, 3, E(2) + E(3));
  r.set_product(3, 3, E(2) + E(3));
  return r;
}

namespace {

constexpr long kRhoKey = std::numeric_limits<long>::max();

RingSpec toy_i(long d) {
  if (d < 2) throw RingError(Err::BadParams, "toy (i) needs d >= 2");
  RingSpec::Rule rule;
  rule.meta_of_key = [d](long key) -> std::optional<BasisMeta> {
    BasisMeta m;
    if (key == kRhoKey) {
      m.label = "rho";
      m.dim = d;
      m.rho_mult = 1;
    } else {
      m.label = key == 0  ? "1"
                : key > 0 ? "u" + std::to_string(key)
                          : "v" + std::to_string(-key);
      m.dim = 1;
    }
    return m;
  };
  rule.key_of_label = [](const std::string& s) -> std::optional<long> {
    if (s == "1") return 0L;
    if (s == "rho") return kRhoKey;
    if (s.size() > 1 && (s[0] == 'u' || s[0] == 'v')) {
      try {
        long n = std::stol(s.substr(1));
        if (n > 0) return s[0] == 'u' ? n : -n;
      } catch (...) {
      }
    }
    return std::nullopt;
  };
  rule.star_key = [](long k) { return k == kRhoKey ? k : -k; };
  rule.product = [d](long a, long b) -> std::vector<std::pair<long, Int>> {
    if (a == kRhoKey && b == kRhoKey) return {{kRhoKey, Int(d)}};
    if (a == kRhoKey || b == kRhoKey) return {{kRhoKey, Int(1)}};
    return {{a + b, Int(1)}};
  };
  rule.nth_key = [](std::size_t n) -> long {
    if (n == 0) return 0;
    if (n == 1) return kRhoKey;
    long k = static_cast<long>((n - 2) / 2 + 1);
    return (n % 2 == 0) ? k : -k;
  };
  rule.projective_keys = {kRhoKey};
  return RingSpec::rule_based("toy(i,d=" + std::to_string(d) + ")",
                              std::move(rule), true);
}

RingSpec toy_ii(long d) {
  if (d < 2) throw RingError(Err::BadParams, "toy (ii) needs d >= 2");
  RingSpec::Rule rule;
  Int dd(d);
  rule.meta_of_key = [dd](long key) -> std::optional<BasisMeta> {
    BasisMeta m;
    if (key == kRhoKey) {
      m.label = "rho";
      m.dim = dd * dd - 1;
      m.rho_mult = 1;
    } else {
      m.label = key == 0  ? "1"
                : key > 0 ? "u" + std::to_string(key)
                          : "v" + std::to_string(-key);
      Int dim(1);
      for (long k = 0; k < std::abs(key); ++k) dim *= dd;
      m.dim = dim;
    }
    return m;
  };
  rule.key_of_label = [](const std::string& s) -> std::optional<long> {
    if (s == "1") return 0L;
    if (s == "rho") return kRhoKey;
    if (s.size() > 1 && (s[0] == 'u' || s[0] == 'v')) {
      try {
        long n = std::stol(s.substr(1));
        if (n > 0) return s[0] == 'u' ? n : -n;
      } catch (...) {
      }
    }
    return std::nullopt;
  };
  rule.star_key = [](long k) { return k == kRhoKey ? k : -k; };
  rule.product = [dd](long a, long b) -> std::vector<std::pair<long, Int>> {
    auto dpow = [&dd](long e) {
      Int r(1);
      for (long k = 0; k < e; ++k) r *= dd;
      return r;
    };
    if (a == kRhoKey && b == kRhoKey) return {{kRhoKey, dd * dd - 1}};
    if (a == kRhoKey || b == kRhoKey) {
      long other = a == kRhoKey ? b : a;
      return {{kRhoKey, dpow(std::labs(other))}};
    }
    if (a == 0) return {{b, Int(1)}};
    if (b == 0) return {{a, Int(1)}};
    if ((a > 0) == (b > 0)) return {{a + b, Int(1)}};
    // u^m v^n = u^(m-n) (1 + rho)^min(m,n); (1+rho)^t = 1 + c_t rho,
    // c_t = (d^2t - 1)/(d^2 - 1); and x_k rho = d^|k| rho.
    long t = std::min(std::labs(a), std::labs(b));
    long rest = a + b;
    Int c_t = (dpow(2 * t) - 1) / (dd * dd - 1);
    Int coeff = c_t * dpow(std::labs(rest));
    std::vector<std::pair<long, Int>> out;
    out.emplace_back(rest, Int(1));
    out.emplace_back(kRhoKey, coeff);
    return out;
  };
  rule.nth_key = [](std::size_t n) -> long {
    if (n == 0) return 0;
    if (n == 1) return kRhoKey;
    long k = static_cast<long>((n - 2) / 2 + 1);
    return (n % 2 == 0) ? k : -k;
  };
  rule.projective_keys = {kRhoKey};
  return RingSpec::rule_based("toy(ii,d=" + std::to_string(d) + ")",
                              std::move(rule), true);
}

RingSpec toy_iii() {
  std::vector<BasisMeta> basis(3);
  basis[0] = {"1", Int(1), 0, Int(0)};
  basis[1] = {"x1", Int(2), 2, Int(1)};
  basis[2] = {"x2", Int(2), 1, Int(1)};
  RingSpec r = RingSpec::finite("Z[v]/(v^3-2v^2)", std::move(basis), 0, true);
  Element rho = Element::basis(1) + Element::basis(2);
  for (int j = 0; j < 3; ++j) r.set_product(0, j, Element::basis(j));
  r.set_product(1, 1, rho);
  r.set_product(1, 2, rho);
  r.set_product(2, 2, rho);
  return r;
}

}  // namespace

RingSpec toy_ring(ToyKind which, long d) {
  switch (which) {
    case ToyKind::i:
      return toy_i(d);
    case ToyKind::ii:
      return toy_ii(d);
    case ToyKind::iii:
      return toy_iii();
  }
  throw RingError(Err::BadParams, "unknown toy ring");
}

RingSpec z2_z4_integral() {
  std::vector<BasisMeta> basis(9);
  const int dims[9] = {1, 1, 2, 2, 3, 3, 4, 4, 4};
  for (int i = 0; i < 9; ++i) {
    basis[i].label = "c" + std::to_string(i + 1);
    basis[i].dim = dims[i];
    basis[i].star = i;  // every module is self-dual
    basis[i].rho_mult = (i == 8) ? 1 : 0;
  }
  RingSpec r = RingSpec::finite("a(Z2[Z/4])", std::move(basis), 0, true);
  auto C = [](int i) { return Element::basis(i - 1); };
  auto set = [&r](int i, int j, Element e) {
    r.set_product(i - 1, j - 1, std::move(e));
  };
  for (int j = 1; j <= 9; ++j) set(1, j, C(j));
  set(2, 2, C(1));
  set(2, 3, C(3));
  set(2, 4, C(4));
  set(2, 5, C(6));
  set(2, 6, C(5));
  set(2, 7, C(7));
  set(2, 8, C(8));
  set(2, 9, C(9));
  set(3, 3, Rational(2) * C(4));
  set(3, 4, Rational(2) * C(3));
  set(3, 5, C(4) + C(9));
  set(3, 6, C(4) + C(9));
  set(3, 7, C(3) + C(4) + C(9));
  set(3, 8, C(3) + C(4) + C(9));
  set(3, 9, Rational(2) * C(9));
  set(4, 4, Rational(2) * C(4));
  set(4, 5, C(3) + C(9));
  set(4, 6, C(3) + C(9));
  set(4, 7, C(3) + C(4) + C(9));
  set(4, 8, C(3) + C(4) + C(9));
  set(4, 9, Rational(2) * C(9));
  set(5, 5, C(1) + Rational(2) * C(9));
  set(5, 6, C(2) + Rational(2) * C(9));
  set(5, 7, C(8) + Rational(2) * C(9));
  set(5, 8, C(7) + Rational(2) * C(9));
  set(5, 9, Rational(3) * C(9));
  set(6, 6, C(1) + Rational(2) * C(9));
  set(6, 7, C(8) + Rational(2) * C(9));
  set(6, 8, C(7) + Rational(2) * C(9));
  set(6, 9, Rational(3) * C(9));
  set(7, 7, C(7) + C(8) + Rational(2) * C(9));
  set(7, 8, C(7) + C(8) + Rational(2) * C(9));
  set(7, 9, Rational(4) * C(9));
  set(8, 8, C(7) + C(8) + Rational(2) * C(9));
  set(8, 9, Rational(4) * C(9));
  set(9, 9, Rational(4) * C(9));
  return r;
}

QuotientPresentation sl2_quotient(long q) {
  auto pp = prime_power(q);
  if (!pp || q < 3)
    throw RingError(Err::NotPrimePower, "q must be a prime power >= 3");
  QuotientPresentation out;
  out.q = q;
  out.p = pp->first;
  out.m = pp->second;
  out.minimal_poly = f_poly(static_cast<unsigned>(q));
  out.rank = static_cast<int>(q) - 1;
  out.gamma = f_roots(static_cast<unsigned>(q)).front();
  return out;
}

RingSpec build_family(const FamilyParams& fp) {
  switch (fp.family) {
    case Family::cyclic_p:
      return cyclic_p(fp.p);
    case Family::cyclic_pn:
      return cyclic_pn(fp.p, fp.n, fp.basis_cap);
    case Family::frobenius:
      return frobenius(fp.p, fp.m, fp.d, fp.subgroup);
    case Family::taft:
      return taft(fp.m, fp.n);
    case Family::sweedler:
      return sweedler();
    case Family::toy_i:
      return toy_ring(ToyKind::i, fp.d);
    case Family::toy_ii:
      return toy_ring(ToyKind::ii, fp.d);
    case Family::toy_iii:
      return toy_ring(ToyKind::iii);
    case Family::z2_z4_integral:
      return z2_z4_integral();
    case Family::custom:
      return load_ring_file(fp.path);
  }
  throw RingError(Err::BadParams, "unknown family");
}

std::vector<std::pair<int, long>> green_formula_product(long p, int n, int j) {
  long pn = 1;
  for (int k = 0; k < n; ++k) pn *= p;
  const long pn1 = pn * p;
  if (j < 1 || j > pn1)
    throw RingError(Err::OutOfRange, "j out of range for a(Z/p^(n+1))");
  // Signed accumulation. Boundary convention: write j = j0*p^n + j1 with
  // 1 <= j1 <= p^n, so j1 may equal p^n; negative intermediate terms cancel.
  std::map<long, long> acc;
  auto add = [&acc, pn1](long block, long c) {
    if (c == 0) return;
    if (block < 1 || block > pn1)
      throw RingError(Err::OutOfRange, "block out of range in Green formula");
    acc[block] += c;
  };
  long j0 = j / pn, j1 = j % pn;
  if (j1 == 0) {
    j0 -= 1;
    j1 = pn;
  }
  if (j0 == 0) {
    add(pn + j1, 1);
    add(pn, j1 - 1);
  } else if (j0 <= p - 2) {
    add((j0 + 1) * pn + j1, 1);
    add((j0 + 1) * pn, j1 - 1);
    add((j0 + 1) * pn - j1, 1);
    add(j0 * pn, pn - j1 - 1);
    add((j0 - 1) * pn + j1, 1);
  } else {
    add(pn1, j1 + 1);
    add((p - 1) * pn, pn - j1 - 1);
    add((p - 2) * pn + j1, 1);
  }
  std::vector<std::pair<int, long>> out;
  for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
    if (it->second < 0)
      throw RingError(Err::NumericalFailure,
                      "Green formula produced a negative multiplicity");
    if (it->second > 0)
      out.emplace_back(static_cast<int>(it->first), it->second);
  }
  return out;
}

std::string render_compact(const Element& e, const RingSpec& ring) {
  std::vector<std::pair<int, long>> parts;
  for (const auto& [id, c] : e.terms()) {
    const std::string& lab = ring.label_of(id);
    if (lab.size() < 2 || lab[0] != 'J')
      throw RingError(Err::BadParams, "compact rendering needs J-labels");
    parts.emplace_back(std::stoi(lab.substr(1)), c.get_num().get_si());
  }
  std::sort(parts.rbegin(), parts.rend());
  std::ostringstream os;
  bool first = true;
  for (const auto& [block, mult] : parts) {
    if (!first) os << " ";
    first = false;
    os << block;
    if (mult > 1) os << "^" << mult;
  }
  return first ? "0" : os.str();
}

}  // namespace repring
