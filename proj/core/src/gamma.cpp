#include "repring/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "repring/species.hpp"

namespace repring {

std::string to_string(GammaMethod m) {
  switch (m) {
    case GammaMethod::sequence:
      return "sequence";
    case GammaMethod::perron_frobenius:
      return "perron_frobenius";
    case GammaMethod::species:
      return "species";
    case GammaMethod::closed_form:
      return "closed_form";
  }
  return "?";
}

std::vector<Int> core_dim_sequence(const Element& x, const RepIdeal& ideal,
                                   const RingSpec& ring, int N,
                                   std::size_t support_cap) {
  if (!x.non_negative())
    throw RingError(Err::BadParams, "core_dim_sequence needs x >= 0");
  std::vector<Int> c;
  c.reserve(N + 1);
  // x^{n+1} computed as core(core(x^n) * x): dropped ideal terms only ever
  // generate ideal terms, so the cored power has the same core.
  Element pow = core(Element::basis(ring.identity()), ideal);
  Element xc = core(x, ideal);
  for (int n = 0; n <= N; ++n) {
    Rational d = dim_of(pow, ring);
    c.push_back(d.get_num());
    if (n == N) break;
    pow = core(multiply(pow, xc, ring), ideal);
    if (pow.support_size() > support_cap)
      throw RingError(Err::BudgetExceeded,
                      "core_dim_sequence support cap exceeded");
  }
  return c;
}

double nth_root(const Int& v, int n) {
  if (v <= 0) return 0;
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  double log_v = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
  return std::exp(log_v / n);
}

std::optional<SubringBasis> is_algebraic(const Element& x,
                                         const RepIdeal& ideal,
                                         const RingSpec& ring,
                                         std::size_t budget) {
  if (!x.non_negative())
    throw RingError(Err::BadParams, "is_algebraic needs x >= 0");
  const Element xs = star(x, ring);
  std::set<BasisId> seen{ring.identity()};
  std::deque<BasisId> work{ring.identity()};
  std::size_t ops = 0;
  while (!work.empty()) {
    BasisId i = work.front();
    work.pop_front();
    for (const Element* gen : {&x, &xs}) {
      if (++ops > budget) return std::nullopt;
      Element prod = core(multiply(*gen, Element::basis(i), ring), ideal);
      for (const auto& [k, ck] : prod.terms())
        if (seen.insert(k).second) {
          if (seen.size() > budget) return std::nullopt;
          work.push_back(k);
        }
    }
  }
  SubringBasis out;
  out.ids.assign(seen.begin(), seen.end());
  return out;
}

PerronFrobeniusResult gamma_pf(const Element& x, const RingSpec& ring) {
  if (!x.non_negative())
    throw RingError(Err::BadParams, "gamma_pf needs x >= 0");
  RepIdeal max = x_max(ring);
  auto basis = is_algebraic(x, max, ring);
  if (!basis)
    throw RingError(Err::NotAlgebraic,
                    "x is not algebraic mod X_max within budget");
  const auto& ids = basis->ids;
  const std::size_t r = ids.size();
  // dense matrix B of multiplication by y = sum over subring basis, mod max
  std::vector<std::vector<double>> B(r, std::vector<double>(r, 0.0));
  for (std::size_t i = 0; i < r; ++i) {
    Element yxi;
    for (std::size_t k = 0; k < r; ++k) yxi += ring.product(ids[k], ids[i]);
    for (std::size_t j = 0; j < r; ++j)
      B[i][j] = yxi.coeff(ids[j]).get_d();
  }
  // power iteration, all-ones start; B > 0 entrywise so the dominant
  // eigenvalue is simple and the iteration cannot cycle
  std::vector<double> u(r, 1.0), tmp(r, 0.0);
  double lambda = 0;
  for (int it = 0; it < 100000; ++it) {
    double norm = 0;
    for (std::size_t j = 0; j < r; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < r; ++i) s += B[i][j] * u[i];
      tmp[j] = s;
      norm = std::max(norm, std::abs(s));
    }
    double rayleigh = 0, denom = 0;
    for (std::size_t j = 0; j < r; ++j) {
      rayleigh += tmp[j] * u[j];
      denom += u[j] * u[j];
    }
    rayleigh /= denom;
    // residual of the current iterate: tmp = B u before normalisation
    double res = 0, umax = 0;
    for (std::size_t j = 0; j < r; ++j) {
      res = std::max(res, std::abs(tmp[j] - rayleigh * u[j]));
      umax = std::max(umax, std::abs(u[j]));
    }
    for (std::size_t j = 0; j < r; ++j) tmp[j] /= norm;
    double drift = std::abs(rayleigh - lambda);
    lambda = rayleigh;
    u.swap(tmp);
    if (it > 2 && drift < 1e-12 * std::max(1.0, std::abs(lambda)) &&
        res < 1e-12 * umax * std::max(1.0, std::abs(lambda)))
      break;
  }
  // residual ||Bu - lambda u||_inf / ||u||_inf
  double resid = 0, umax = 0;
  for (std::size_t j = 0; j < r; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < r; ++i) s += B[i][j] * u[i];
    resid = std::max(resid, std::abs(s - lambda * u[j]));
    umax = std::max(umax, std::abs(u[j]));
  }
  PerronFrobeniusResult out;
  out.basis = *basis;
  out.dominant_eigenvalue = lambda;
  out.residual = resid / umax;
  out.eigenvector = u;
  if (out.residual > 1e-9)
    throw RingError(Err::NumericalFailure,
                    "power iteration residual too large");
  // species value via x u = s(x) u on the positive eigenvector
  Element xc = core(x, max);
  double sx = 0, wbest = -1;
  for (std::size_t j = 0; j < r; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < r; ++i) {
      Element t = core(multiply(xc, Element::basis(ids[i]), ring), max);
      s += t.coeff(ids[j]).get_d() * u[i];
    }
    if (u[j] > wbest) {
      wbest = u[j];
      sx = s / u[j];
    }
  }
  out.gamma = sx;
  return out;
}

GammaReport gamma_estimate(const Element& x, const RepIdeal& ideal,
                           const RingSpec& ring, int N) {
  GammaReport rep;
  if (x.is_zero()) {
    rep.c = {Int(0)};
    rep.upper = 0;
    rep.certified = CertifiedGamma{0.0, GammaMethod::closed_form, "x = 0"};
    rep.method_log.push_back("zero element");
    return rep;
  }
  if (in_ideal_span(x, ideal)) {
    rep.c.assign(static_cast<std::size_t>(N) + 1, Int(0));
    rep.c[0] = 1;  // core of x^0 = 1 has dimension 1
    rep.upper = 0;
    rep.certified = CertifiedGamma{0.0, GammaMethod::closed_form, "x in <X>"};
    rep.method_log.push_back("x lies in the ideal span; gamma = 0");
    return rep;
  }
  rep.c = core_dim_sequence(x, ideal, ring, N);
  rep.upper = std::numeric_limits<double>::infinity();
  for (int n = 1; n < static_cast<int>(rep.c.size()); ++n)
    rep.upper = std::min(rep.upper, nth_root(rep.c[n], n));
  rep.method_log.push_back("Fekete: upper = min_n c_n^(1/n), n <= " +
                           std::to_string(N));
  if (rep.c.size() >= 3 && rep.c.back() > 0) {
    // ratio heuristic over a step of 2 to smooth parity oscillation
    int n = static_cast<int>(rep.c.size()) - 1;
    if (rep.c[n - 2] > 0) {
      Rational ratio(rep.c[n], rep.c[n - 2]);
      rep.lower_heuristic = std::sqrt(ratio.get_d());
      rep.method_log.push_back("heuristic lower bound from c_N / c_{N-2}");
    }
  }
  if (ring.is_finite()) {
    try {
      auto sp = gamma_via_species(x, ideal, ring);
      rep.certified = CertifiedGamma{sp.value, GammaMethod::species,
                                     "max |s(x)| over core-bounded species"};
      rep.method_log.push_back("species maximisation over the quotient");
    } catch (const RingError&) {
      // quotient too large or enumeration failed; sequence bound stands
    }
  }
  return rep;
}

EndotrivialClass endotrivial_test(const Element& x, const RepIdeal& ideal,
                                  const RingSpec& ring) {
  if (!x.non_negative())
    throw RingError(Err::BadParams, "endotrivial_test needs x >= 0");
  if (in_ideal_span(x, ideal)) return EndotrivialClass::in_ideal;
  Element xxs = multiply(x, star(x, ring), ring);
  xxs -= Element::basis(ring.identity());
  if (in_ideal_span(xxs, ideal)) return EndotrivialClass::endotrivial;
  return EndotrivialClass::gamma_ge_sqrt2;
}

double alpha_constant() {
  // real root of X^3 - 4X^2 + 4X - 2 in [2, 3]
  auto f = [](double t) { return ((t - 4) * t + 4) * t - 2; };
  double lo = 2, hi = 3;
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2;
    if (f(mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace repring
