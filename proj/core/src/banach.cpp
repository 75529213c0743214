#include "repring/banach.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace repring {

namespace {

Rational rat_abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

}  // namespace

Rational norm_l1(const Element& x, const RingSpec& ring) {
  Rational out(0);
  for (const auto& [i, c] : x.terms()) out += rat_abs(c) * Rational(ring.dim(i));
  return out;
}

Rational norm_quotient(const Element& x, const RepIdeal& ideal,
                       const RingSpec& ring) {
  Rational out(0);
  for (const auto& [i, c] : x.terms())
    if (!ideal.contains(i)) out += rat_abs(c) * Rational(ring.dim(i));
  return out;
}

Rational norm_l2_squared(const Element& x, const RingSpec& ring) {
  Rational out(0);
  for (const auto& [i, c] : x.terms())
    out += Rational(n_weight(ring, i)) * c * c;
  return out;
}

double norm_l2(const Element& x, const RingSpec& ring) {
  return std::sqrt(norm_l2_squared(x, ring).get_d());
}

Rational inner(const Element& x, const Element& y, const RingSpec& ring) {
  return trace(multiply(x, star(y, ring), ring), ring);
}

MultBoundCheck check_mult_bound(const Element& x, const Element& y,
                                const RingSpec& ring) {
  RepIdeal max = x_max(ring);
  MultBoundCheck out;
  Element xy = core(multiply(x, y, ring), max);
  out.lhs = std::sqrt(norm_l2_squared(xy, ring).get_d());
  Rational xnorm = norm_quotient(x, max, ring);
  out.rhs = xnorm.get_d() * std::sqrt(norm_l2_squared(core(y, max), ring).get_d());
  out.pass = out.lhs <= out.rhs + 1e-12;
  return out;
}

namespace {

// support ball: indices reachable from supp(x) u {1} by multiplying with x
// or x*, cored mod max
std::vector<BasisId> truncation_ball(const Element& x, const RepIdeal& max,
                                     const RingSpec& ring, int radius) {
  std::set<BasisId> seen;
  std::vector<BasisId> frontier;
  auto push = [&](BasisId i) {
    if (!max.contains(i) && seen.insert(i).second) frontier.push_back(i);
  };
  push(ring.identity());
  for (const auto& [i, c] : x.terms()) push(i);
  const Element xs = star(x, ring);
  std::vector<BasisId> cur(frontier);
  for (int r = 0; r < radius; ++r) {
    std::vector<BasisId> next;
    for (BasisId i : cur)
      for (const Element* g : {&x, &xs}) {
        Element img = core(multiply(*g, Element::basis(i), ring), max);
        for (const auto& [k, c] : img.terms())
          if (!max.contains(k) && seen.insert(k).second) next.push_back(k);
      }
    if (next.empty()) break;
    cur = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

SupNormEstimate sup_norm_estimate(const Element& x, const RingSpec& ring,
                                  int iters, int trunc_radius) {
  RepIdeal max = x_max(ring);
  SupNormEstimate out;
  std::vector<BasisId> space;
  if (ring.is_finite()) {
    space = complement_ids(ring, max);
  } else {
    space = truncation_ball(x, max, ring, trunc_radius);
    out.truncated = true;
  }
  const std::size_t r = space.size();
  out.truncation_rank = static_cast<int>(r);
  if (r == 0) return out;
  std::vector<double> w(r);  // l^2 weights n_i
  std::vector<std::size_t> pos_lookup;
  std::unordered_map<BasisId, std::size_t> pos;
  for (std::size_t k = 0; k < r; ++k) {
    pos[space[k]] = k;
    w[k] = n_weight(ring, space[k]).get_d();
  }
  Element xc = core(x, max);
  Element xs = core(star(x, ring), max);
  // multiplication operator M and its l^2 adjoint M* = mult by x*
  auto apply = [&](const Element& mult_by, const std::vector<double>& v,
                   std::vector<double>& dst) {
    std::fill(dst.begin(), dst.end(), 0.0);
    for (std::size_t k = 0; k < r; ++k) {
      if (v[k] == 0) continue;
      Element img =
          core(multiply(mult_by, Element::basis(space[k]), ring), max);
      for (const auto& [i, c] : img.terms()) {
        auto it = pos.find(i);
        if (it != pos.end()) dst[it->second] += c.get_d() * v[k];
      }
    }
  };
  std::vector<double> v(r, 1.0), t1(r), t2(r);
  double lam = 0, prev = -1;
  int it = 0;
  for (; it < iters; ++it) {
    apply(xc, v, t1);
    apply(xs, t1, t2);
    // weighted Rayleigh quotient <M*Mv, v>_w / <v, v>_w
    double num = 0, den = 0, nrm = 0;
    for (std::size_t k = 0; k < r; ++k) {
      num += w[k] * t2[k] * v[k];
      den += w[k] * v[k] * v[k];
      nrm = std::max(nrm, std::abs(t2[k]));
    }
    lam = den > 0 ? num / den : 0;
    if (nrm == 0) {
      lam = 0;
      break;
    }
    for (std::size_t k = 0; k < r; ++k) v[k] = t2[k] / nrm;
    if (it > 4 && std::abs(lam - prev) < 1e-10 * std::max(1.0, lam)) break;
    prev = lam;
  }
  out.iterations = it;
  out.value = std::sqrt(std::max(0.0, lam));
  return out;
}

QuasinilpotentReport quasinilpotent_probe(const Element& x,
                                          const RingSpec& ring, int N) {
  QuasinilpotentReport rep;
  Element pow = Element::basis(ring.identity());
  const int rank_cap = ring.is_finite() ? ring.rank() : N;
  for (int n = 1; n <= N; ++n) {
    pow = multiply(pow, x, ring);
    Rational nn = norm_l1(pow, ring);
    rep.norm_roots.push_back(std::pow(nn.get_d(), 1.0 / n));
    if (!rep.nilpotent_index && pow.is_zero() && n <= rank_cap)
      rep.nilpotent_index = n;
    if (pow.is_zero()) break;
  }
  // consistency with no-quasinilpotents in a_max: nonzero image there
  // means the root sequence must stay >= 1 eventually
  RepIdeal max = x_max(ring);
  Element image = core(x, max);
  if (!image.is_zero() && !rep.norm_roots.empty()) {
    double last = rep.norm_roots.back();
    rep.consistent = last > 0.5;
  }
  return rep;
}

}  // namespace repring
