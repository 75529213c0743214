#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "repring/exprparse.hpp"
#include "repring/families.hpp"
#include "repring/gamma.hpp"
#include "repring/species.hpp"
#include "golden_tables.hpp"
#include "test_helpers.hpp"

using namespace repring;
using namespace repring::testing;

namespace {

Element parse(const RingSpec& r, const std::string& s) {
  return parse_element(s, r);
}

// match computed species against a reference table up to column permutation
bool matches_up_to_permutation(const std::vector<Species>& sp,
                               const SpeciesTable& reference, double tol) {
  if (sp.empty() || sp.size() != reference[0].size()) return false;
  const std::size_t rows = reference.size();
  std::vector<bool> used(sp.size(), false);
  for (std::size_t col = 0; col < reference[0].size(); ++col) {
    bool found = false;
    for (std::size_t t = 0; t < sp.size() && !found; ++t) {
      if (used[t]) continue;
      bool all = true;
      for (std::size_t r = 0; r < rows && all; ++r)
        if (std::abs(sp[t].values[r] - reference[r][col]) > tol) all = false;
      if (all) {
        used[t] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("species of cyclic groups match the classical tables") {
  SUBCASE("Z/3: values on J2 are 2, 1, -1") {
    auto sp = enumerate_species(cyclic_p(3));
    REQUIRE(sp.size() == 3);
    CHECK(matches_up_to_permutation(sp, z3_species(), 1e-9));
  }
  SUBCASE("Z/5") {
    auto sp = enumerate_species(cyclic_p(5));
    REQUIRE(sp.size() == 5);
    CHECK(matches_up_to_permutation(sp, z5_species(), 1e-8));
  }
  SUBCASE("Z/4") {
    auto sp = enumerate_species(cyclic_pn(2, 2));
    REQUIRE(sp.size() == 4);
    CHECK(matches_up_to_permutation(sp, z4_species(), 1e-8));
  }
}

TEST_CASE("species of the integral ring match the classical 8-column table") {
  RingSpec r = z2_z4_integral();
  auto sp = enumerate_species(r);
  REQUIRE(sp.size() == 8);
  SpeciesTable reference;
  for (const auto& row : z2z4_species()) {
    std::vector<std::complex<double>> v(row.begin(), row.end());
    reference.push_back(std::move(v));
  }
  CHECK(matches_up_to_permutation(sp, reference, 1e-7));
  SUBCASE("entries are integers") {
    for (const auto& s : sp)
      for (auto v : s.values) {
        CHECK(std::abs(v.imag()) < 1e-8);
        CHECK(std::abs(v.real() - std::round(v.real())) < 1e-7);
      }
  }
}

TEST_CASE("Sweedler species are the hom-consistent vectors") {
  RingSpec s = sweedler();
  auto sp = enumerate_species(s);
  REQUIRE(sp.size() == 3);
  SpeciesTable reference = {{1, 1, 1}, {1, -1, 1}, {0, 0, 2}, {0, 0, 2}};
  CHECK(matches_up_to_permutation(sp, reference, 1e-9));
}

TEST_CASE("classification flags") {
  SUBCASE("dimension species is Brauer, not core bounded") {
    RingSpec z5 = cyclic_p(5);
    auto sp = enumerate_species(z5);
    RepIdeal proj = x_proj(z5);
    int brauer = 0, bounded = 0;
    for (const auto& s : sp) {
      CHECK(s.dimension_bounded);
      if (s.brauer) {
        ++brauer;
        CHECK_FALSE(core_bounded(s, proj, z5));
        // it is the dimension function
        for (BasisId i = 0; i < z5.rank(); ++i)
          CHECK(approx(s.values[i].real(), z5.dim(i).get_d(), 1e-8));
      }
      if (core_bounded(s, proj, z5)) ++bounded;
    }
    CHECK(brauer == 1);
    CHECK(bounded == 4);
  }
  SUBCASE("sweedler: (1,-1,0,0) is core bounded, not Brauer") {
    RingSpec s = sweedler();
    auto sp = enumerate_species(s);
    RepIdeal max = x_max(s);
    for (const auto& t : sp) {
      if (std::abs(t.values[s.id_of("S1")] + 1.0) < 1e-9) {
        CHECK(core_bounded(t, max, s));
        CHECK_FALSE(t.brauer);
      }
    }
  }
}

TEST_CASE("nil radicals") {
  SUBCASE("Z2[Z/4]: rank 1 spanned by c7 - c8") {
    RingSpec r = z2_z4_integral();
    RadicalReport rep = nilradical(r);
    REQUIRE(rep.rank == 1);
    Element b = rep.basis[0];
    Element expect = parse(r, "c7") - parse(r, "c8");
    // compare up to scalar
    Rational scale = b.coeff(r.id_of("c7"));
    REQUIRE(scale != 0);
    CHECK((1 / scale) * b == expect);
  }
  SUBCASE("cyclic_p(5) is semisimple") {
    CHECK(nilradical(cyclic_p(5)).rank == 0);
  }
  SUBCASE("sweedler: rank 1 spanned by P0 - P1") {
    RingSpec s = sweedler();
    RadicalReport rep = nilradical(s);
    REQUIRE(rep.rank == 1);
    Element b = rep.basis[0];
    Rational scale = b.coeff(s.id_of("P0"));
    REQUIRE(scale != 0);
    CHECK((1 / scale) * b == parse(s, "P0") - parse(s, "P1"));
  }
  SUBCASE("radical elements are nilpotent of index <= rank + 1") {
    for (const RingSpec& r : {z2_z4_integral(), sweedler(), taft(4, 2)}) {
      RadicalReport rep = nilradical(r);
      for (const Element& b : rep.basis) {
        CHECK(power(b, static_cast<unsigned>(rep.rank) + 1, r).is_zero());
      }
    }
  }
}

TEST_CASE("gamma via species on worked examples") {
  const double pi = 3.14159265358979323846;
  SUBCASE("cyclic_p(5), [J3]") {
    RingSpec z5 = cyclic_p(5);
    auto res = gamma_via_species(parse(z5, "J3"), x_proj(z5), z5);
    CHECK(approx(res.value, std::sin(3 * pi / 5) / std::sin(pi / 5), 1e-9));
    CHECK(approx(res.value, 1.61803, 5e-6));
  }
  SUBCASE("x = 1") {
    RingSpec z5 = cyclic_p(5);
    auto res = gamma_via_species(Element::basis(z5.identity()), x_proj(z5),
                                 z5);
    CHECK(approx(res.value, 1.0, 1e-10));
  }
  SUBCASE("frobenius(3,2,1): gamma of J2 S1 at proj is 1") {
    RingSpec g = frobenius(3, 2, 1);
    auto res = gamma_via_species(parse(g, "J2S1"), x_proj(g), g);
    CHECK(approx(res.value, 1.0, 1e-8));
  }
  SUBCASE("agrees with Perron-Frobenius where both apply") {
    RingSpec z7 = cyclic_p(7);
    for (const char* expr : {"J2", "J3", "J2+J4"}) {
      Element x = parse(z7, expr);
      CHECK(approx(gamma_via_species(x, x_max(z7), z7).value,
                   gamma_pf(x, z7).gamma, 1e-8));
    }
  }
}

TEST_CASE("species tables render") {
  std::string text = species_table(cyclic_p(3), TableFormat::text);
  CHECK(text.find("J2") != std::string::npos);
  CHECK(text.find("nil radical 0") != std::string::npos);
  std::string csv = species_table(cyclic_p(3), TableFormat::csv);
  CHECK(csv.find(',') != std::string::npos);
  std::string js = species_table(cyclic_p(3), TableFormat::json);
  CHECK(js.find("\"nilradical_rank\": 0") != std::string::npos);
}

TEST_CASE("symmetry checks") {
  CHECK(symmetry_check(z2_z4_integral()).symmetric);
  CHECK(symmetry_check(cyclic_p(5)).symmetric);
  CHECK(symmetry_check(frobenius(3, 2, 1, true)).symmetric);
  // ordinary rank-1 ring
  std::vector<BasisMeta> basis(1);
  basis[0] = {"1", Int(1), 0, Int(1)};
  RingSpec triv = RingSpec::finite("Z", std::move(basis), 0, true);
  triv.set_product(0, 0, Element::basis(0));
  CHECK(symmetry_check(triv).symmetric);
}

TEST_CASE("idempotent trace check") {
  RingSpec s = sweedler();
  RingSpec q = quotient_ring(s, x_max(s));
  SUBCASE("0 and 1") {
    CHECK(idempotent_trace_check(Element::zero(), q) ==
          IdempotentVerdict::zero);
    CHECK(idempotent_trace_check(Element::basis(q.identity()), q) ==
          IdempotentVerdict::one);
  }
  SUBCASE("(1 + S1)/2 has trace 1/2") {
    Element e = Element::basis(q.identity()) + Element::basis(q.id_of("S1"));
    e *= Rational(1, 2);
    CHECK(idempotent_trace_check(e, q) ==
          IdempotentVerdict::nontrivial_trace_in_01);
    CHECK(trace(e, q) == Rational(1, 2));
  }
  SUBCASE("non idempotent throws") {
    RingSpec z5 = cyclic_p(5);
    RingSpec qz = quotient_ring(z5, x_max(z5));
    CHECK_THROWS_AS((void)idempotent_trace_check(parse(qz, "J2"), qz),
                    RingError);
  }
}

TEST_CASE("nilradical equals the joint species kernel") {
  for (const RingSpec& ring :
       {z2_z4_integral(), sweedler(), taft(2, 2), cyclic_pn(3, 2),
        toy_ring(ToyKind::iii)}) {
    RadicalReport rad = nilradical(ring);
    auto sp = enumerate_species(ring);
    // every radical basis element vanishes under every species
    for (const Element& b : rad.basis)
      for (const auto& s : sp) CHECK(std::abs(s.eval(b)) < 1e-8);
    // species count = rank - radical rank (joint kernel has radical rank)
    CHECK(static_cast<int>(sp.size()) == ring.rank() - rad.rank);
  }
}

TEST_CASE("ordinary rings: identity projective") {
  // character ring of Z/2: basis 1, s with s^2 = 1 and rho = 1 + s
  std::vector<BasisMeta> basis(2);
  basis[0] = {"1", Int(1), 0, Int(1)};
  basis[1] = {"s", Int(1), 1, Int(1)};
  RingSpec r = RingSpec::finite("char(Z/2)", std::move(basis), 0, true);
  r.set_product(0, 0, Element::basis(0));
  r.set_product(0, 1, Element::basis(1));
  r.set_product(1, 1, Element::basis(0));
  CHECK(verify_axioms(r).all_pass());
  // no representation ideals exist
  CHECK_THROWS_AS((void)x_max(r), RingError);
  // semisimple with as many species as the rank, all self conjugate
  CHECK(nilradical(r).rank == 0);
  CHECK(enumerate_species(r).size() == 2);
  CHECK(symmetry_check(r).symmetric);
  // x x* has positive trace for x != 0
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    Element x = random_nonneg(r, rng);
    if (x.is_zero()) continue;
    CHECK(trace(multiply(x, star(x, r), r), r) > 0);
  }
}

TEST_CASE("species separate modulo the radical") {
  RingSpec r = z2_z4_integral();
  auto sp = enumerate_species(r);
  // c7 and c8 differ by a radical element: all species agree on them
  for (const auto& s : sp)
    CHECK(std::abs(s.values[r.id_of("c7")] - s.values[r.id_of("c8")]) < 1e-8);
  // c3 and c4 do not: some species separates them
  bool separated = false;
  for (const auto& s : sp)
    if (std::abs(s.values[r.id_of("c3")] - s.values[r.id_of("c4")]) > 1e-6)
      separated = true;
  CHECK(separated);
}
