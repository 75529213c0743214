#include "repring/homs.hpp"

#include <algorithm>
#include <cmath>

#include "repring/families.hpp"

namespace repring {

namespace {

long pow_long(long p, int n) {
  long r = 1;
  while (n-- > 0) r *= p;
  return r;
}

// ---- dense F_p linear algebra on small matrices ----

struct FpMat {
  long p = 2;
  int rows = 0, cols = 0;
  std::vector<std::vector<std::uint32_t>> a;

  FpMat() = default;
  FpMat(long p_, int r, int c)
      : p(p_), rows(r), cols(c), a(r, std::vector<std::uint32_t>(c, 0)) {}

  static FpMat eye(long p, int n) {
    FpMat m(p, n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
  }
};

std::uint32_t fp_inv(std::uint32_t v, long p) {
  std::uint64_t r = 1, b = v % p;
  long e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

FpMat fp_mul(const FpMat& x, const FpMat& y) {
  FpMat out(x.p, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.a[i][k] == 0) continue;
      std::uint64_t f = x.a[i][k];
      for (int j = 0; j < y.cols; ++j)
        out.a[i][j] =
            static_cast<std::uint32_t>((out.a[i][j] + f * y.a[k][j]) % x.p);
    }
  return out;
}

FpMat fp_pow(FpMat base, long e) {
  FpMat out = FpMat::eye(base.p, base.rows);
  while (e > 0) {
    if (e & 1) out = fp_mul(out, base);
    base = fp_mul(base, base);
    e >>= 1;
  }
  return out;
}

// columns of m spanning its column space, in reduced form
FpMat column_space(FpMat m) {
  // transpose, row-reduce, transpose back
  FpMat t(m.p, m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.a[j][i] = m.a[i][j];
  int r = 0;
  for (int c = 0; c < t.cols && r < t.rows; ++c) {
    int piv = -1;
    for (int i = r; i < t.rows; ++i)
      if (t.a[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(t.a[r], t.a[piv]);
    std::uint64_t inv = fp_inv(t.a[r][c], t.p);
    for (int k = 0; k < t.cols; ++k)
      t.a[r][k] = static_cast<std::uint32_t>(t.a[r][k] * inv % t.p);
    for (int i = 0; i < t.rows; ++i) {
      if (i == r || t.a[i][c] == 0) continue;
      std::uint64_t f = t.p - t.a[i][c];
      for (int k = 0; k < t.cols; ++k)
        t.a[i][k] =
            static_cast<std::uint32_t>((t.a[i][k] + f * t.a[r][k]) % t.p);
    }
    ++r;
  }
  FpMat out(m.p, m.rows, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m.rows; ++j) out.a[j][i] = t.a[i][j];
  return out;
}

// kernel basis (as columns)
FpMat kernel(FpMat m) {
  const int rows = m.rows, cols = m.cols;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m.a[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m.a[r], m.a[piv]);
    std::uint64_t inv = fp_inv(m.a[r][c], m.p);
    for (int k = 0; k < cols; ++k)
      m.a[r][k] = static_cast<std::uint32_t>(m.a[r][k] * inv % m.p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m.a[i][c] == 0) continue;
      std::uint64_t f = m.p - m.a[i][c];
      for (int k = 0; k < cols; ++k)
        m.a[i][k] =
            static_cast<std::uint32_t>((m.a[i][k] + f * m.a[r][k]) % m.p);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  FpMat out(m.p, cols, 0);
  std::vector<std::vector<std::uint32_t>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t rr = 0; rr < pivots.size(); ++rr)
      v[pivots[rr]] = static_cast<std::uint32_t>(
          (m.p - m.a[rr][free]) % m.p);
    basis.push_back(std::move(v));
  }
  out.cols = static_cast<int>(basis.size());
  out.a.assign(cols, std::vector<std::uint32_t>(out.cols, 0));
  for (int j = 0; j < out.cols; ++j)
    for (int i = 0; i < cols; ++i) out.a[i][j] = basis[j][i];
  out.rows = cols;
  return out;
}

// intersection of column spaces
FpMat intersect(const FpMat& u, const FpMat& v) {
  if (u.cols == 0 || v.cols == 0) return FpMat(u.p, u.rows, 0);
  FpMat cat(u.p, u.rows, u.cols + v.cols);
  for (int i = 0; i < u.rows; ++i) {
    for (int j = 0; j < u.cols; ++j) cat.a[i][j] = u.a[i][j];
    for (int j = 0; j < v.cols; ++j)
      cat.a[i][u.cols + j] = (u.p - v.a[i][j]) % u.p;
  }
  FpMat ker = kernel(cat);
  FpMat out(u.p, u.rows, ker.cols);
  for (int c = 0; c < ker.cols; ++c)
    for (int i = 0; i < u.rows; ++i) {
      std::uint64_t s = 0;
      for (int j = 0; j < u.cols; ++j) s += (std::uint64_t)u.a[i][j] * ker.a[j][c];
      out.a[i][c] = static_cast<std::uint32_t>(s % u.p);
    }
  return column_space(out);
}

// solve m x = b (m has full column rank on its span); false if unsolvable
bool solve(const FpMat& m, const std::vector<std::uint32_t>& b,
           std::vector<std::uint32_t>& x) {
  FpMat aug(m.p, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.a[i][j] = m.a[i][j];
    aug.a[i][m.cols] = b[i];
  }
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (aug.a[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(aug.a[r], aug.a[piv]);
    std::uint64_t inv = fp_inv(aug.a[r][c], m.p);
    for (int k = 0; k <= m.cols; ++k)
      aug.a[r][k] = static_cast<std::uint32_t>(aug.a[r][k] * inv % m.p);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || aug.a[i][c] == 0) continue;
      std::uint64_t f = m.p - aug.a[i][c];
      for (int k = 0; k <= m.cols; ++k)
        aug.a[i][k] = static_cast<std::uint32_t>(
            (aug.a[i][k] + f * aug.a[r][k]) % m.p);
    }
    pivots.push_back(c);
    ++r;
  }
  for (int i = r; i < m.rows; ++i)
    if (aug.a[i][m.cols]) return false;
  x.assign(m.cols, 0);
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.a[k][m.cols];
  return true;
}

// Jordan type (block length -> multiplicity) of a unipotent matrix
std::vector<std::pair<int, int>> unipotent_type(const FpMat& g) {
  const int n = g.rows;
  if (n == 0) return {};
  FpMat nil = g;
  for (int i = 0; i < n; ++i) nil.a[i][i] = (nil.a[i][i] + g.p - 1) % g.p;
  std::vector<int> nullity{0};
  FpMat pw = FpMat::eye(g.p, n);
  for (int s = 1; s <= n + 1; ++s) {
    pw = fp_mul(pw, nil);
    FpMat k = kernel(pw);
    nullity.push_back(k.cols);
    if (k.cols == n) break;
  }
  std::vector<std::pair<int, int>> type;
  const int smax = static_cast<int>(nullity.size()) - 1;
  for (int s = 1; s <= smax; ++s) {
    int ge_s = nullity[s] - nullity[s - 1];
    int ge_s1 = s < smax ? nullity[s + 1] - nullity[s] : 0;
    if (ge_s - ge_s1 > 0) type.emplace_back(s, ge_s - ge_s1);
  }
  std::reverse(type.begin(), type.end());
  return type;
}

}  // namespace

FSpectrum f_spectrum(long p, int n, int j, const RingSpec& target) {
  const long pn = pow_long(p, n);
  const long pn1 = pn * p;
  if (j < 1 || j > pn1)
    throw RingError(Err::OutOfRange, "block length out of range");
  // g: unipotent Jordan block of length j; X = g^{p^n} - 1
  FpMat g(p, j, j);
  for (int i = 0; i < j; ++i) {
    g.a[i][i] = 1;
    if (i + 1 < j) g.a[i][i + 1] = 1;
  }
  FpMat gz = fp_pow(g, pn);
  FpMat X = gz;
  for (int i = 0; i < j; ++i) X.a[i][i] = (X.a[i][i] + p - 1) % p;
  FpMat kerX = kernel(X);
  FSpectrum out;
  // powers of X
  std::vector<FpMat> xpow{FpMat::eye(p, j)};
  for (long s = 1; s <= p; ++s) xpow.push_back(fp_mul(xpow.back(), X));
  for (long i = 1; i <= p; ++i) {
    FpMat A = intersect(kerX, column_space(xpow[i - 1]));
    FpMat B = intersect(kerX, column_space(xpow[i]));
    // complement of B inside A: columns of A adding new pivots over B
    FpMat cat(g.p, j, B.cols + A.cols);
    for (int r = 0; r < j; ++r) {
      for (int c = 0; c < B.cols; ++c) cat.a[r][c] = B.a[r][c];
      for (int c = 0; c < A.cols; ++c) cat.a[r][B.cols + c] = A.a[r][c];
    }
    FpMat full = column_space(cat);
    // representatives: greedily pick A-columns independent modulo B
    std::vector<int> picked;
    {
      FpMat cur = B;
      int rank_cur = column_space(cur).cols;
      for (int c = 0; c < A.cols &&
                      static_cast<int>(picked.size()) < full.cols - B.cols;
           ++c) {
        FpMat test(g.p, j, cur.cols + 1);
        for (int r = 0; r < j; ++r) {
          for (int k = 0; k < cur.cols; ++k) test.a[r][k] = cur.a[r][k];
          test.a[r][cur.cols] = A.a[r][c];
        }
        int rank_test = column_space(test).cols;
        if (rank_test > rank_cur) {
          picked.push_back(c);
          cur = std::move(test);
          rank_cur = rank_test;
        }
      }
    }
    FpMat reps(g.p, j, static_cast<int>(picked.size()));
    for (std::size_t c = 0; c < picked.size(); ++c)
      for (int r = 0; r < j; ++r) reps.a[r][c] = A.a[r][picked[c]];
    const int q = reps.cols;
    Element fi;
    if (q > 0) {
      // induced action of g on A/B in the [B | reps] coordinates
      FpMat coord(g.p, j, B.cols + q);
      for (int r = 0; r < j; ++r) {
        for (int c = 0; c < B.cols; ++c) coord.a[r][c] = B.a[r][c];
        for (int c = 0; c < q; ++c) coord.a[r][B.cols + c] = reps.a[r][c];
      }
      FpMat gb(g.p, q, q);
      for (int c = 0; c < q; ++c) {
        std::vector<std::uint32_t> img(j, 0);
        for (int r = 0; r < j; ++r) {
          std::uint64_t s = 0;
          for (int k = 0; k < j; ++k) s += (std::uint64_t)g.a[r][k] * reps.a[k][c];
          img[r] = static_cast<std::uint32_t>(s % g.p);
        }
        std::vector<std::uint32_t> sol;
        if (!solve(coord, img, sol))
          throw RingError(Err::NumericalFailure,
                          "F_i quotient action not well defined");
        for (int r = 0; r < q; ++r) gb.a[r][c] = sol[B.cols + r];
      }
      for (const auto& [len, mult] : unipotent_type(gb))
        fi.add_term(target.id_of("J" + std::to_string(len)), Rational(mult));
    }
    out.f.push_back(std::move(fi));
  }
  return out;
}

Element s_hat0(long p, int n, const Element& x, const RingSpec& source,
               const RingSpec& target) {
  const long pn = pow_long(p, n);
  Element out;
  for (const auto& [id, c] : x.terms()) {
    const std::string& lab = source.label_of(id);
    long j = std::stol(lab.substr(1));
    // j = 2bp^n +- r with 0 <= b <= p/2, 0 <= r <= p^n
    long b = (j + pn) / (2 * pn);
    long r = j - 2 * b * pn;
    int sign = r >= 0 ? 1 : -1;
    r = std::labs(r);
    if (b > 0)
      out.add_term(target.id_of("J" + std::to_string(pn)),
                   Rational(2 * b) * c);
    if (r > 0)
      out.add_term(target.id_of("J" + std::to_string(r)),
                   (sign > 0 ? c : Rational(-c)));
  }
  return out;
}

namespace {

// reduce a polynomial in c modulo f_p(c) (monic)
IntPolynomial reduce_mod_fp(IntPolynomial poly, const IntPolynomial& fp) {
  const int d = fp.degree();
  while (poly.degree() >= d) {
    std::vector<Int> coeffs = poly.coeffs();
    Int lead = coeffs.back();
    int shift = poly.degree() - d;
    std::vector<Int> sub(poly.degree() + 1, Int(0));
    for (int k = 0; k <= d; ++k) sub[k + shift] = lead * fp.coeff(k);
    poly = poly - IntPolynomial(std::move(sub));
  }
  return poly;
}

void pe_add(PolyElement& dst, BasisId id, const IntPolynomial& poly) {
  if (poly.is_zero()) return;
  auto [it, fresh] = dst.emplace(id, poly);
  if (!fresh) {
    it->second = it->second + poly;
    if (it->second.is_zero()) dst.erase(it);
  }
}

}  // namespace

PolyElement s_hat_image(long p, int n, int ell, const Element& x,
                        const RingSpec& source, const RingSpec& target) {
  if (ell < 0 || ell >= p)
    throw RingError(Err::BadParams, "ell must lie in 0..p-1");
  if (!x.integral())
    throw RingError(Err::BadParams, "s_hat needs an integral element");
  PolyElement out;
  if (ell == 0) {
    Element e = s_hat0(p, n, x, source, target);
    for (const auto& [id, c] : e.terms())
      pe_add(out, id, IntPolynomial(std::vector<Int>{c.get_num()}));
    return out;
  }
  IntPolynomial fp = f_poly(static_cast<unsigned>(p));
  for (const auto& [id, c] : x.terms()) {
    const std::string& lab = source.label_of(id);
    int j = std::stoi(lab.substr(1));
    FSpectrum fs = f_spectrum(p, n, j, target);
    for (long k = 1; k <= p - 1; ++k) {
      // coefficient s_ell([J_k]) = f_k(c), already reduced (deg k-1 < p-1)
      IntPolynomial coef = f_poly(static_cast<unsigned>(k));
      for (const auto& [rid, mult] : fs.f[k - 1].terms()) {
        std::vector<Int> scale{c.get_num() * mult.get_num()};
        pe_add(out, rid, coef * IntPolynomial(std::move(scale)));
      }
    }
  }
  return out;
}

PolyElement poly_element_multiply(const PolyElement& a, const PolyElement& b,
                                  const RingSpec& target, long p) {
  IntPolynomial fp = f_poly(static_cast<unsigned>(p));
  PolyElement out;
  for (const auto& [ia, pa] : a)
    for (const auto& [ib, pb] : b) {
      IntPolynomial prod = reduce_mod_fp(pa * pb, fp);
      for (const auto& [k, c] : target.product(ia, ib).terms()) {
        std::vector<Int> scale{c.get_num()};
        pe_add(out, k, prod * IntPolynomial(std::move(scale)));
      }
    }
  return out;
}

std::map<BasisId, double> poly_element_eval(const PolyElement& a, double c) {
  std::map<BasisId, double> out;
  for (const auto& [id, poly] : a) out[id] = poly.eval(c);
  return out;
}

namespace {

// ---- exact multi-level cyclotomic scalars for species chains ----

struct CycloTensor {
  // exponent vector per level -> integer coefficient
  std::map<std::vector<std::uint8_t>, Int> terms;
  int nvars = 0;

  static CycloTensor constant(int nvars, Int v) {
    CycloTensor t;
    t.nvars = nvars;
    if (v != 0) t.terms[std::vector<std::uint8_t>(nvars, 0)] = std::move(v);
    return t;
  }

  bool is_zero() const { return terms.empty(); }
};

CycloTensor ct_add(const CycloTensor& a, const CycloTensor& b) {
  CycloTensor out = a;
  out.nvars = std::max(a.nvars, b.nvars);
  for (const auto& [e, c] : b.terms) {
    auto [it, fresh] = out.terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

// multiply by f_k(X_var), reducing X_var powers mod f_p
CycloTensor ct_mul_fk(const CycloTensor& a, int var, unsigned k,
                      const IntPolynomial& fp) {
  CycloTensor out;
  out.nvars = a.nvars;
  IntPolynomial fk = f_poly(k);
  for (const auto& [e, c] : a.terms) {
    // X_var^e[var] * c as a univariate polynomial, other exponents fixed
    std::vector<Int> tmp(e[var] + 1, Int(0));
    tmp[e[var]] = c;
    IntPolynomial prod = reduce_mod_fp(IntPolynomial(std::move(tmp)) * fk, fp);
    for (int d = 0; d <= prod.degree(); ++d) {
      if (prod.coeff(d) == 0) continue;
      auto key = e;
      key[var] = static_cast<std::uint8_t>(d);
      auto [it, fresh] = out.terms.emplace(key, prod.coeff(d));
      if (!fresh) {
        it->second += prod.coeff(d);
        if (it->second == 0) out.terms.erase(it);
      }
    }
  }
  return out;
}

CycloTensor ct_scale(const CycloTensor& a, const Int& v) {
  CycloTensor out;
  out.nvars = a.nvars;
  if (v == 0) return out;
  for (const auto& [e, c] : a.terms) out.terms[e] = c * v;
  return out;
}

double ct_eval(const CycloTensor& a, const std::vector<double>& xs) {
  double out = 0;
  for (const auto& [e, c] : a.terms) {
    double t = c.get_d();
    for (int v = 0; v < a.nvars; ++v)
      for (int k = 0; k < e[v]; ++k) t *= xs[v];
    out += t;
  }
  return out;
}

}  // namespace

Species species_chain(long p, int n, const std::vector<int>& ells,
                      const RingSpec& ring) {
  if (static_cast<int>(ells.size()) != n)
    throw RingError(Err::BadParams, "need n indices ell_0..ell_{n-1}");
  for (int e : ells)
    if (e < 0 || e >= p)
      throw RingError(Err::BadParams, "ell indices must lie in 0..p-1");
  IntPolynomial fp = f_poly(static_cast<unsigned>(p));
  const double pi = 3.14159265358979323846;
  std::vector<double> xs(n, 0.0);
  for (int t = 0; t < n; ++t)
    if (ells[t] >= 1) xs[t] = 2 * std::cos(ells[t] * pi / p);

  // target rings a(Z/p^t) for t = 1..n-1 (labels only; products unused)
  std::vector<RingSpec> levels;
  for (int t = 1; t < n; ++t) levels.push_back(cyclic_pn(p, t));

  Species out;
  out.values.resize(ring.rank());
  const long pn = [&] {
    long r = 1;
    for (int k = 0; k < n; ++k) r *= p;
    return r;
  }();
  // cache F-spectra per level and block length
  std::vector<std::map<int, FSpectrum>> fcache(n);
  for (long jj = 1; jj <= pn; ++jj) {
    // element of a(Z/p^cur) with CycloTensor coefficients, keyed by block
    std::map<int, CycloTensor> cur;
    cur.emplace(static_cast<int>(jj), CycloTensor::constant(n, Int(1)));
    for (int t = n - 1; t >= 1; --t) {
      const RingSpec& tgt = levels[t - 1];
      long pt = 1;
      for (int k = 0; k < t; ++k) pt *= p;
      std::map<int, CycloTensor> next;
      auto add_to = [&next](int block, const CycloTensor& v) {
        auto [it, fresh] = next.emplace(block, v);
        if (!fresh) it->second = ct_add(it->second, v);
      };
      for (const auto& [block, coef] : cur) {
        if (ells[t] == 0) {
          long b = (block + pt) / (2 * pt);
          long r = block - 2 * b * pt;
          int sign = r >= 0 ? 1 : -1;
          r = std::labs(r);
          if (b > 0)
            add_to(static_cast<int>(pt), ct_scale(coef, Int(2 * b)));
          if (r > 0)
            add_to(static_cast<int>(r),
                   sign > 0 ? coef : ct_scale(coef, Int(-1)));
        } else {
          auto it = fcache[t].find(block);
          if (it == fcache[t].end())
            it = fcache[t].emplace(block, f_spectrum(p, t, block, tgt)).first;
          for (long k = 1; k <= p - 1; ++k) {
            CycloTensor scaled =
                ct_mul_fk(coef, t, static_cast<unsigned>(k), fp);
            for (const auto& [rid, mult] : it->second.f[k - 1].terms()) {
              int rblock = std::stoi(tgt.label_of(rid).substr(1));
              add_to(rblock, ct_scale(scaled, mult.get_num()));
            }
          }
        }
      }
      cur = std::move(next);
    }
    // final level: s_{ell_0} on a(Z/p)
    CycloTensor total = CycloTensor::constant(n, Int(0));
    for (const auto& [block, coef] : cur) {
      if (ells[0] == 0) {
        total = ct_add(total, ct_scale(coef, Int(block)));
      } else {
        total = ct_add(total, ct_mul_fk(coef, 0,
                                        static_cast<unsigned>(block), fp));
      }
    }
    out.values[ring.id_of("J" + std::to_string(jj))] = ct_eval(total, xs);
  }
  out.dimension_bounded = true;
  out.brauer = false;
  for (BasisId i = 0; i < ring.rank(); ++i) {
    if (std::abs(out.values[i]) > ring.dim(i).get_d() + 1e-9)
      out.dimension_bounded = false;
    if (ring.rho_mult(i) > 0 && std::abs(out.values[i]) > 1e-9)
      out.brauer = true;
  }
  {
    std::string hint = "s_" + std::to_string(ells[0]);
    for (int t = 1; t < n; ++t) hint += " s^_" + std::to_string(ells[t]);
    hint += ", values in Z[2cos(pi/" + std::to_string(p) + ")]";
    out.exact_hint = std::move(hint);
  }
  return out;
}

std::vector<Species> all_species_chains(long p, int n, const RingSpec& ring) {
  long count = 1;
  for (int k = 0; k < n; ++k) count *= p;
  std::vector<Species> out;
  out.reserve(count);
  for (long idx = 0; idx < count; ++idx) {
    std::vector<int> ells(n);
    long rem = idx;
    for (int t = 0; t < n; ++t) {  // ell_0 fastest
      ells[t] = static_cast<int>(rem % p);
      rem /= p;
    }
    out.push_back(species_chain(p, n, ells, ring));
  }
  return out;
}

Element psi(long t, const Element& x, const RingSpec& cyclic_ring, long p) {
  if (t < 1) throw RingError(Err::BadParams, "psi index must be positive");
  if (!x.integral())
    throw RingError(Err::BadParams, "psi needs an integral element");
  if (!cyclic_ring.is_finite() || cyclic_ring.rank() != p)
    throw RingError(Err::UnsupportedRing,
                    "psi is implemented on a(Z/p) with p = rank");
  // Frobenius triviality: strip p-power factors; then fold mod 2p into 1..p-1
  while (t % p == 0) t /= p;
  t %= 2 * p;
  if (t > p) t = 2 * p - t;
  // t in 1..p-1 now (t = p impossible: p stripped)
  Element psi_j2;
  if (t + 1 <= p) psi_j2 += Element::basis(cyclic_ring.id_of("J" + std::to_string(t + 1)));
  if (t - 1 >= 1) psi_j2 -= Element::basis(cyclic_ring.id_of("J" + std::to_string(t - 1)));
  // extend via [J_j] = f_j([J_2]): Q_j = psi(J_j) = f_j(psi(J_2))
  Element one = Element::basis(cyclic_ring.identity());
  std::vector<Element> Q{Element(), one, psi_j2};  // Q[0] unused, Q[1]=1
  for (long j = 3; j <= p; ++j) {
    Element next = multiply(psi_j2, Q[j - 1], cyclic_ring);
    next -= Q[j - 2];
    Q.push_back(std::move(next));
  }
  Element out;
  for (const auto& [id, c] : x.terms()) {
    long j = std::stol(cyclic_ring.label_of(id).substr(1));
    out += c * Q[j];
  }
  return out;
}

}  // namespace repring
