#include <doctest.h>

#include <cmath>

#include "repring/banach.hpp"
#include "repring/exprparse.hpp"
#include "repring/families.hpp"
#include "repring/homs.hpp"
#include "repring/species.hpp"
#include "test_helpers.hpp"

using namespace repring;
using namespace repring::testing;

namespace {
Element parse(const RingSpec& r, const std::string& s) {
  return parse_element(s, r);
}
}  // namespace

TEST_CASE("F-spectra against the classical columns") {
  SUBCASE("Z/4 -> Z/2: F(J3) = ([J1], [J1])") {
    RingSpec z2 = cyclic_p(2);
    FSpectrum f = f_spectrum(2, 1, 3, z2);
    REQUIRE(f.f.size() == 2);
    CHECK(f.f[0] == parse(z2, "J1"));
    CHECK(f.f[1] == parse(z2, "J1"));
  }
  SUBCASE("Z/9 -> Z/3: F(J5) = ([J1], [J2], 0)") {
    RingSpec z3 = cyclic_p(3);
    FSpectrum f = f_spectrum(3, 1, 5, z3);
    REQUIRE(f.f.size() == 3);
    CHECK(f.f[0] == parse(z3, "J1"));
    CHECK(f.f[1] == parse(z3, "J2"));
    CHECK(f.f[2].is_zero());
  }
  SUBCASE("F(J1) is concentrated in F_1") {
    RingSpec z3 = cyclic_p(3);
    FSpectrum f = f_spectrum(3, 1, 1, z3);
    CHECK(f.f[0] == parse(z3, "J1"));
    CHECK(f.f[1].is_zero());
    CHECK(f.f[2].is_zero());
  }
  SUBCASE("full Z/4 and Z/9 F-columns") {
    RingSpec z2 = cyclic_p(2);
    // rows J1..J4 -> (F1, F2)
    std::vector<std::pair<std::string, std::string>> z4_expect = {
        {"J1", "0"}, {"J2", "0"}, {"J1", "J1"}, {"0", "J2"}};
    for (int j = 1; j <= 4; ++j) {
      FSpectrum f = f_spectrum(2, 1, j, z2);
      CHECK(to_string(f.f[0], z2) == z4_expect[j - 1].first);
      CHECK(to_string(f.f[1], z2) == z4_expect[j - 1].second);
    }
    RingSpec z3 = cyclic_p(3);
    std::vector<std::array<std::string, 3>> z9_expect = {
        {"J1", "0", "0"},  {"J2", "0", "0"},  {"J3", "0", "0"},
        {"J2", "J1", "0"}, {"J1", "J2", "0"}, {"0", "J3", "0"},
        {"0", "J2", "J1"}, {"0", "J1", "J2"}, {"0", "0", "J3"}};
    for (int j = 1; j <= 9; ++j) {
      FSpectrum f = f_spectrum(3, 1, j, z3);
      for (int i = 0; i < 3; ++i)
        CHECK(to_string(f.f[i], z3) == z9_expect[j - 1][i]);
    }
  }
  SUBCASE("dimension identity: sum k dim F_k = dim M") {
    RingSpec z5 = cyclic_p(5);
    for (int j = 1; j <= 25; ++j) {
      FSpectrum f = f_spectrum(5, 1, j, z5);
      Rational total(0);
      for (std::size_t k = 0; k < f.f.size(); ++k)
        total += Rational(static_cast<long>(k + 1)) * dim_of(f.f[k], z5);
      CHECK(total == j);
    }
  }
}

TEST_CASE("s_hat_0 on classical columns") {
  SUBCASE("Z/4: [J3] -> 2[J2] - [J1]") {
    RingSpec z4 = cyclic_pn(2, 2), z2 = cyclic_p(2);
    CHECK(s_hat0(2, 1, parse(z4, "J3"), z4, z2) == parse(z2, "2*J2 - J1"));
    CHECK(s_hat0(2, 1, parse(z4, "J4"), z4, z2) == parse(z2, "2*J2"));
  }
  SUBCASE("Z/9 column") {
    RingSpec z9 = cyclic_pn(3, 2), z3 = cyclic_p(3);
    CHECK(s_hat0(3, 1, parse(z9, "J4"), z9, z3) == parse(z3, "2*J3 - J2"));
    CHECK(s_hat0(3, 1, parse(z9, "J7"), z9, z3) == parse(z3, "2*J3 + J1"));
    CHECK(s_hat0(3, 1, parse(z9, "J9"), z9, z3) == parse(z3, "3*J3"));
  }
  SUBCASE("identity on the subring") {
    RingSpec z9 = cyclic_pn(3, 2), z3 = cyclic_p(3);
    for (int j = 1; j <= 3; ++j) {
      Element x = parse(z9, "J" + std::to_string(j));
      CHECK(s_hat0(3, 1, x, z9, z3) ==
            parse(z3, "J" + std::to_string(j)));
    }
  }
}

TEST_CASE("s_hat_ell images") {
  SUBCASE("Z/8: s_hat_1 [J6] = [J2]") {
    RingSpec z8 = cyclic_pn(2, 3), z4 = cyclic_pn(2, 2);
    PolyElement img = s_hat_image(2, 2, 1, parse(z8, "J6"), z8, z4);
    REQUIRE(img.size() == 1);
    CHECK(img.begin()->first == z4.id_of("J2"));
    CHECK(img.begin()->second == IntPolynomial(std::vector<Int>{1}));
  }
  SUBCASE("s_hat_ell is the identity on the subalgebra") {
    RingSpec z9 = cyclic_pn(3, 2), z3 = cyclic_p(3);
    for (int ell = 1; ell <= 2; ++ell) {
      PolyElement img = s_hat_image(3, 1, ell, parse(z9, "J2"), z9, z3);
      REQUIRE(img.size() == 1);
      CHECK(img.begin()->first == z3.id_of("J2"));
      CHECK(img.begin()->second == IntPolynomial(std::vector<Int>{1}));
    }
  }
  SUBCASE("multiplicativity, exact in Z[c]/(f_p), on all basis pairs") {
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 1}, {2, 2},
                                                         {3, 1}}) {
      RingSpec source = cyclic_pn(p, n + 1), target = cyclic_pn(p, n);
      long pn1 = 1;
      for (int k = 0; k <= n; ++k) pn1 *= p;
      for (int ell = 0; ell < p; ++ell) {
        for (int a = 1; a <= pn1; ++a)
          for (int b = a; b <= pn1; ++b) {
            Element xa = parse(source, "J" + std::to_string(a));
            Element xb = parse(source, "J" + std::to_string(b));
            PolyElement lhs = s_hat_image(
                p, n, ell, multiply(xa, xb, source), source, target);
            PolyElement rhs = poly_element_multiply(
                s_hat_image(p, n, ell, xa, source, target),
                s_hat_image(p, n, ell, xb, source, target), target, p);
            CHECK(lhs == rhs);
          }
      }
    }
  }
}

TEST_CASE("species chains") {
  SUBCASE("Z/9: s_0 s_hat_1 [J4] = 3") {
    RingSpec z9 = cyclic_pn(3, 2);
    Species s = species_chain(3, 2, {0, 1}, z9);
    CHECK(approx(s.values[z9.id_of("J4")].real(), 3.0, 1e-9));
  }
  SUBCASE("Z/4: s_1 s_hat_1 [J3] = 1") {
    RingSpec z4 = cyclic_pn(2, 2);
    Species s = species_chain(2, 2, {1, 1}, z4);
    CHECK(approx(s.values[z4.id_of("J3")].real(), 1.0, 1e-9));
  }
  SUBCASE("all-zero chain is the dimension species") {
    RingSpec z8 = cyclic_pn(2, 3);
    Species s = species_chain(2, 3, {0, 0, 0}, z8);
    for (BasisId i = 0; i < z8.rank(); ++i)
      CHECK(approx(s.values[i].real(), z8.dim(i).get_d(), 1e-9));
  }
  SUBCASE("chains are pairwise distinct and match enumerate_species") {
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 2}, {2, 3},
                                                         {3, 2}}) {
      RingSpec ring = cyclic_pn(p, n);
      auto chains = all_species_chains(p, n, ring);
      long pn = 1;
      for (int k = 0; k < n; ++k) pn *= p;
      REQUIRE(static_cast<long>(chains.size()) == pn);
      for (std::size_t a = 0; a < chains.size(); ++a)
        for (std::size_t b = a + 1; b < chains.size(); ++b) {
          double diff = 0;
          for (BasisId i = 0; i < ring.rank(); ++i)
            diff = std::max(diff, std::abs(chains[a].values[i] -
                                           chains[b].values[i]));
          CHECK(diff > 1e-8);
        }
      // set equality with the independently enumerated species
      auto sp = enumerate_species(ring);
      REQUIRE(sp.size() == chains.size());
      for (const auto& c : chains) {
        bool found = false;
        for (const auto& s : sp) {
          double diff = 0;
          for (BasisId i = 0; i < ring.rank(); ++i)
            diff = std::max(diff, std::abs(c.values[i] - s.values[i]));
          if (diff < 1e-8) found = true;
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("Adams operations on a(Z/p)") {
  RingSpec z5 = cyclic_p(5);
  SUBCASE("psi^2 [J2] = [J3] - [J1]") {
    CHECK(psi(2, parse(z5, "J2"), z5, 5) == parse(z5, "J3 - J1"));
  }
  SUBCASE("psi^1 is the identity") {
    for (int j = 1; j <= 5; ++j) {
      Element x = parse(z5, "J" + std::to_string(j));
      CHECK(psi(1, x, z5, 5) == x);
    }
  }
  SUBCASE("period and Frobenius reductions") {
    Element x = parse(z5, "J2 + 2*J3");
    CHECK(psi(2, x, z5, 5) == psi(8, x, z5, 5));    // 2p - 2 = 8
    CHECK(psi(2, x, z5, 5) == psi(12, x, z5, 5));   // 2p + 2 = 12
    CHECK(psi(2, x, z5, 5) == psi(10, x, z5, 5));   // p * 2 strips to 2
  }
  SUBCASE("psi^m psi^n = psi^mn on [J2]") {
    Element j2 = parse(z5, "J2");
    for (long m = 1; m <= 4; ++m)
      for (long n = 1; n <= 4; ++n)
        CHECK(psi(m, psi(n, j2, z5, 5), z5, 5) == psi(m * n, j2, z5, 5));
  }
  SUBCASE("psi preserves the dimension species") {
    std::mt19937 rng(3);
    for (int t = 0; t < 40; ++t) {
      Element x = random_nonneg(z5, rng);
      for (long n = 2; n <= 4; ++n)
        CHECK(dim_of(psi(n, x, z5, 5), z5) == dim_of(x, z5));
    }
  }
  SUBCASE("psi^n(s_k)[J2] = 2cos(nk pi / p)") {
    const double pi = 3.14159265358979323846;
    auto sp = enumerate_species(z5);
    Element j2 = parse(z5, "J2");
    for (long n = 1; n <= 4; ++n) {
      Element pj2 = psi(n, j2, z5, 5);
      for (const auto& s : sp) {
        if (s.brauer) continue;  // s_0 = dim
        double v2 = s.eval(j2).real();
        // find k with s[J2] = 2cos(k pi / 5)
        int k = 0;
        for (int kk = 1; kk <= 4; ++kk)
          if (approx(v2, 2 * std::cos(kk * pi / 5), 1e-9)) k = kk;
        REQUIRE(k > 0);
        CHECK(approx(s.eval(pj2).real(), 2 * std::cos(n * k * pi / 5), 1e-9));
      }
    }
  }
  SUBCASE("norm bound ||psi^n x|| <= ||x||^n") {
    std::mt19937 rng(7);
    RingSpec z7 = cyclic_p(7);
    for (int t = 0; t < 60; ++t) {
      Element x = random_nonneg(z7, rng);
      Rational nx = norm_l1(x, z7);
      Rational bound(1);
      for (long n = 1; n <= 4; ++n) {
        bound *= nx;
        CHECK(norm_l1(psi(n, x, z7, 7), z7) <= bound);
      }
    }
  }
  SUBCASE("unsupported rings are rejected") {
    RingSpec s = sweedler();
    CHECK_THROWS_AS((void)psi(2, Element::basis(0), s, 5), RingError);
  }
}

TEST_CASE("chain species agree with s-hat images composed with dim") {
  // two independent exact representations: the multi-level chain scalars
  // and the single-level polynomial images
  const double pi = 3.14159265358979323846;
  RingSpec z25 = cyclic_pn(5, 2), z5 = cyclic_p(5);
  for (int ell = 0; ell < 5; ++ell) {
    Species chain = species_chain(5, 2, {0, ell}, z25);
    double c = ell >= 1 ? 2 * std::cos(ell * pi / 5) : 0.0;
    for (int j = 1; j <= 25; ++j) {
      Element x = parse(z25, "J" + std::to_string(j));
      PolyElement img = s_hat_image(5, 1, ell, x, z25, z5);
      double via_img = 0;
      for (const auto& [id, v] : poly_element_eval(img, c))
        via_img += v * z5.dim(id).get_d();
      CHECK(approx(chain.values[z25.id_of("J" + std::to_string(j))].real(),
                   via_img, 1e-9));
    }
  }
}
