#include "repring/species.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace repring {

std::complex<double> Species::eval(const Element& x) const {
  std::complex<double> v = 0;
  for (const auto& [i, c] : x.terms())
    v += c.get_d() * values[static_cast<std::size_t>(i)];
  return v;
}

namespace {

using RatMatrix = std::vector<std::vector<Rational>>;

// reduced row echelon form; returns pivot column of each row
std::vector<int> rref(RatMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    Rational inv = 1 / m[r][c];
    for (int k = c; k < cols; ++k) m[r][k] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// exact kernel basis of m (as row vectors over the column space)
std::vector<std::vector<Rational>> kernel_basis(RatMatrix m) {
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -m[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

struct QuotientAlgebra {
  // semisimple quotient A/J in a complement basis indexed by kept coords
  std::vector<int> kept;                   // original coords kept
  std::vector<std::vector<Rational>> proj; // rank x kept-size projection
  // multiplication matrices of the images of the original basis vectors
  std::vector<Eigen::MatrixXd> mult;       // one per original basis element
  Eigen::VectorXd identity_coords;
};

// projection of original coordinate vectors onto the complement of the
// radical: radical rows in rref give, for each pivot coordinate, its
// expression in terms of free (kept) coordinates.
QuotientAlgebra build_quotient(const RingSpec& ring,
                               const std::vector<Element>& radical) {
  const int n = ring.rank();
  QuotientAlgebra qa;
  RatMatrix rad;
  for (const Element& b : radical) {
    std::vector<Rational> row(n, Rational(0));
    for (const auto& [i, c] : b.terms()) row[i] = c;
    rad.push_back(std::move(row));
  }
  std::vector<int> pivots = rref(rad);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) qa.kept.push_back(c);
  const int m = static_cast<int>(qa.kept.size());
  std::vector<int> kept_pos(n, -1);
  for (int k = 0; k < m; ++k) kept_pos[qa.kept[k]] = k;
  // proj(e_c): e_c itself if kept; else e_pivot = -sum over free coords
  auto project = [&](const Element& x) {
    std::vector<Rational> out(m, Rational(0));
    for (const auto& [i, c] : x.terms()) {
      if (kept_pos[i] >= 0) {
        out[kept_pos[i]] += c;
      } else {
        // find the radical row with this pivot
        for (std::size_t r = 0; r < pivots.size(); ++r) {
          if (pivots[r] != i) continue;
          for (int k = 0; k < m; ++k)
            out[k] -= c * rad[r][qa.kept[k]];
          break;
        }
      }
    }
    return out;
  };
  // multiplication matrices on the quotient: column b -> proj(x_i * e_kept[b])
  qa.mult.resize(n);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd M(m, m);
    for (int b = 0; b < m; ++b) {
      auto col = project(ring.product(i, qa.kept[b]));
      for (int a = 0; a < m; ++a) M(a, b) = col[a].get_d();
    }
    qa.mult[i] = std::move(M);
  }
  auto idc = project(Element::basis(ring.identity()));
  qa.identity_coords.resize(m);
  for (int a = 0; a < m; ++a) qa.identity_coords(a) = idc[a].get_d();
  return qa;
}

bool verify_species(const RingSpec& ring, const Species& s, double tol) {
  const int n = ring.rank();
  auto val = [&s](BasisId i) { return s.values[static_cast<std::size_t>(i)]; };
  if (std::abs(val(ring.identity()) - 1.0) > tol) return false;
  for (BasisId i = 0; i < n; ++i)
    for (BasisId j = i; j < n; ++j) {
      std::complex<double> lhs = s.eval(ring.product(i, j));
      if (std::abs(lhs - val(i) * val(j)) > tol) return false;
    }
  return true;
}

void sort_species(std::vector<Species>& out) {
  auto key = [](const Species& s) {
    std::vector<std::pair<double, double>> k;
    k.reserve(s.values.size());
    for (auto v : s.values)
      k.emplace_back(std::round(v.real() * 1e6) / 1e6,
                     std::round(v.imag() * 1e6) / 1e6);
    return k;
  };
  std::sort(out.begin(), out.end(),
            [&key](const Species& a, const Species& b) {
              return key(a) < key(b);
            });
}

}  // namespace

RadicalReport nilradical(const RingSpec& ring, int max_rank) {
  const int n = ring.rank();
  if (n > max_rank)
    throw RingError(Err::RankExceeded, "ring rank exceeds nilradical cap");
  // regular trace of multiplication by x_i x_j
  std::vector<std::vector<Rational>> tr_cache(n);
  auto reg_trace = [&](const Element& z) {
    Rational t(0);
    for (BasisId k = 0; k < n; ++k)
      for (const auto& [i, c] : z.terms()) t += c * ring.product(i, k).coeff(k);
    return t;
  };
  RatMatrix gram(n, std::vector<Rational>(n, Rational(0)));
  for (BasisId i = 0; i < n; ++i)
    for (BasisId j = i; j < n; ++j) {
      Rational t = reg_trace(ring.product(i, j));
      gram[i][j] = t;
      gram[j][i] = t;
    }
  RadicalReport rep;
  for (auto& v : kernel_basis(std::move(gram))) {
    Element b;
    for (int c = 0; c < n; ++c)
      if (v[c] != 0) b.add_term(c, v[c]);
    rep.basis.push_back(std::move(b));
  }
  rep.rank = static_cast<int>(rep.basis.size());
  return rep;
}

std::vector<Species> enumerate_species(const RingSpec& ring,
                                       const SpeciesOptions& opts) {
  const int n = ring.rank();
  if (n > opts.max_rank)
    throw RingError(Err::RankExceeded, "ring rank exceeds species cap");
  RadicalReport rad = nilradical(ring, opts.max_rank);
  QuotientAlgebra qa = build_quotient(ring, rad.basis);
  const int m = static_cast<int>(qa.kept.size());
  if (m == 0) return {};

  std::mt19937 rng(opts.seed * 7919u + 17u);
  std::uniform_int_distribution<int> coeff(1, 8 + 4 * m);
  for (int attempt = 0; attempt < 12; ++attempt) {
    // generic element z of the quotient as a random combination of the
    // images of the basis elements
    Eigen::MatrixXd Lz = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < n; ++i) Lz += coeff(rng) * qa.mult[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Lz.transpose().cast<std::complex<double>>());
    if (es.info() != Eigen::Success) continue;
    std::vector<Species> out;
    bool ok = true;
    for (int e = 0; e < m && ok; ++e) {
      Eigen::VectorXcd w = es.eigenvectors().col(e);
      // one inverse-iteration polish step on (Lz^T - lambda I)
      std::complex<double> lam = es.eigenvalues()(e);
      Eigen::MatrixXcd shifted =
          Lz.transpose().cast<std::complex<double>>() -
          (lam + std::complex<double>(1e-13, 1e-13)) *
              Eigen::MatrixXcd::Identity(m, m);
      Eigen::VectorXcd polished = shifted.partialPivLu().solve(w);
      if (polished.allFinite() && polished.norm() > 0) w = polished;
      // normalise as a functional: s(1) = 1
      std::complex<double> s1 = 0;
      for (int a = 0; a < m; ++a) s1 += w(a) * qa.identity_coords(a);
      if (std::abs(s1) < 1e-12) {
        ok = false;
        break;
      }
      w /= s1;
      Species s;
      s.values.resize(n);
      for (int i = 0; i < n; ++i) {
        // s(x_i) = functional applied to the image of x_i: w^T (M_i 1)
        Eigen::VectorXd xi = qa.mult[i] * qa.identity_coords;
        std::complex<double> v = 0;
        for (int a = 0; a < m; ++a) v += w(a) * xi(a);
        s.values[i] = v;
      }
      if (!verify_species(ring, s, opts.verify_tol)) {
        ok = false;
        break;
      }
      out.push_back(std::move(s));
    }
    if (!ok || static_cast<int>(out.size()) != m) continue;
    // distinctness of the species as value vectors
    for (auto& s : out) {
      s.dimension_bounded = true;
      s.brauer = false;
      for (int i = 0; i < n; ++i) {
        double di = ring.dim(i).get_d();
        if (std::abs(s.values[i]) > di + opts.vanish_tol)
          s.dimension_bounded = false;
        if (ring.rho_mult(i) > 0 &&
            std::abs(s.values[i]) > opts.vanish_tol)
          s.brauer = true;
      }
    }
    sort_species(out);
    bool distinct = true;
    for (std::size_t a = 0; a + 1 < out.size(); ++a) {
      double diff = 0;
      for (int i = 0; i < n; ++i)
        diff = std::max(diff,
                        std::abs(out[a].values[i] - out[a + 1].values[i]));
      if (diff < opts.verify_tol) distinct = false;
    }
    if (!distinct) continue;
    return out;
  }
  throw RingError(Err::NumericalFailure,
                  "species enumeration failed verification");
}

bool core_bounded(const Species& s, const RepIdeal& ideal,
                  const RingSpec& ring, double vanish_tol) {
  if (!s.dimension_bounded) return false;
  for (BasisId i = 0; i < ring.rank(); ++i)
    if (ideal.contains(i) && std::abs(s.values[i]) > vanish_tol) return false;
  return true;
}

GammaSpeciesResult gamma_via_species(const Element& x, const RepIdeal& ideal,
                                     const RingSpec& ring,
                                     const SpeciesOptions& opts) {
  RingSpec q = quotient_ring(ring, ideal);
  std::vector<Species> sp = enumerate_species(q, opts);
  // lift: species of the quotient <-> species of the ring vanishing on X
  std::vector<BasisId> keep = complement_ids(ring, ideal);
  Element xq;
  Element xcored = core(x, ideal);
  for (const auto& [i, c] : xcored.terms()) {
    auto it = std::lower_bound(keep.begin(), keep.end(), i);
    xq.add_term(static_cast<BasisId>(it - keep.begin()), c);
  }
  GammaSpeciesResult best;
  best.value = -1;
  for (const auto& s : sp) {
    // X-core bounded <=> dimension bounded on the quotient
    if (!s.dimension_bounded) continue;
    double v = std::abs(s.eval(xq));
    if (v > best.value) {
      best.value = v;
      Species lifted;
      lifted.values.assign(ring.rank(), 0.0);
      for (std::size_t k = 0; k < keep.size(); ++k)
        lifted.values[keep[k]] = s.values[k];
      lifted.dimension_bounded = true;
      lifted.brauer = false;
      best.witness = std::move(lifted);
    }
  }
  if (best.value < 0) {
    // no core-bounded species: only possible when x is in the span of X
    best.value = 0;
  }
  return best;
}

std::string species_table(const RingSpec& ring, TableFormat format,
                          const SpeciesOptions& opts) {
  std::vector<Species> sp = enumerate_species(ring, opts);
  RadicalReport rad = nilradical(ring);
  const int n = ring.rank();
  std::ostringstream os;
  auto fmt_c = [](std::complex<double> v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(6);
    double re = v.real() == 0 ? 0.0 : v.real();  // avoid -0
    double im = v.imag() == 0 ? 0.0 : v.imag();
    s << re;
    if (std::abs(im) > 5e-7) s << (im > 0 ? "+" : "-") << std::abs(im) << "i";
    return s.str();
  };
  if (format == TableFormat::json) {
    os << "{\n  \"basis\": [";
    for (int i = 0; i < n; ++i)
      os << (i ? ", " : "") << '"' << ring.label_of(i) << '"';
    os << "],\n  \"species\": [\n";
    for (std::size_t t = 0; t < sp.size(); ++t) {
      os << "    {\"values\": [";
      for (int i = 0; i < n; ++i) {
        if (i) os << ", ";
        os << "{\"re\": " << sp[t].values[i].real()
           << ", \"im\": " << sp[t].values[i].imag() << "}";
      }
      os << "], \"flags\": {\"dimension_bounded\": "
         << (sp[t].dimension_bounded ? "true" : "false")
         << ", \"brauer\": " << (sp[t].brauer ? "true" : "false") << "}}"
         << (t + 1 < sp.size() ? "," : "") << "\n";
    }
    os << "  ],\n  \"nilradical_rank\": " << rad.rank << "\n}";
    return os.str();
  }
  const char sep = format == TableFormat::csv ? ',' : ' ';
  if (format == TableFormat::text) {
    os << "species table of " << ring.name() << " (" << sp.size()
       << " species";
    if (rad.rank == 0) os << ", nil radical 0";
    os << ")\n";
  }
  for (int i = 0; i < n; ++i) {
    os << ring.label_of(i);
    for (const auto& s : sp) os << sep << fmt_c(s.values[i]);
    os << "\n";
  }
  if (format == TableFormat::text && rad.rank > 0) {
    os << "nilradical rank " << rad.rank << ", basis:";
    for (const auto& b : rad.basis) os << " " << to_string(b, ring) << ";";
    os << "\n";
  }
  return os.str();
}

SymmetryResult symmetry_check(const RingSpec& ring,
                              const SpeciesOptions& opts) {
  std::vector<Species> sp = enumerate_species(ring, opts);
  SymmetryResult res;
  for (std::size_t t = 0; t < sp.size(); ++t) {
    if (!sp[t].dimension_bounded) continue;
    for (BasisId i = 0; i < ring.rank(); ++i) {
      std::complex<double> lhs = sp[t].values[ring.star_of(i)];
      std::complex<double> rhs = std::conj(sp[t].values[i]);
      if (std::abs(lhs - rhs) > opts.verify_tol) {
        res.symmetric = false;
        res.counterexample = "species #" + std::to_string(t) + " at " +
                             ring.label_of(i);
        return res;
      }
    }
  }
  return res;
}

IdempotentVerdict idempotent_trace_check(const Element& e,
                                         const RingSpec& quotient) {
  if (multiply(e, e, quotient) != e)
    throw RingError(Err::NotIdempotent, "e^2 != e");
  Rational t = trace(e, quotient);
  if (e.is_zero()) return IdempotentVerdict::zero;
  if (e == Element::basis(quotient.identity())) return IdempotentVerdict::one;
  if (t > 0 && t < 1) return IdempotentVerdict::nontrivial_trace_in_01;
  return IdempotentVerdict::violation;
}

}  // namespace repring
