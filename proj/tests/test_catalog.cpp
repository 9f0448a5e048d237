#include "affhom/catalog.hpp"
#include "affhom/discover.hpp"
#include "affhom/expand.hpp"

#include <doctest.h>

#include <set>

using namespace affhom;

TEST_CASE("catalog contents") {
  const auto& c = catalog();
  CHECK(c.entries.size() == 20);
  CHECK(c.normal_forms.size() == 10);
  CHECK(c.overlaps.size() == 3);
  CHECK(c.variants.size() == 6);
  std::size_t parametric = 0;
  for (const auto& e : c.entries) {
    parametric += e.parametric();
    for (const auto& nf : e.normal_forms) CHECK(find_normal_form(nf) != nullptr);
    CHECK_FALSE(e.real.empty());
  }
  CHECK(parametric == 5);
  CHECK(find_entry("N21") == nullptr);
}

TEST_CASE("parameter restrictions are enforced") {
  const CatalogEntry& n16 = *find_entry("N16");
  for (long a : {0, 1, 2, 3}) CHECK_THROWS_AS(entry_spec(n16, Rational(a)), PreconditionError);
  CHECK_NOTHROW(entry_spec(n16, Rational(7, 2)));
  CHECK_THROWS_AS(entry_spec(*find_entry("N1"), Rational(2)), PreconditionError);
  CHECK_THROWS_AS(find_normal_form("I0.1")->jet(std::nullopt), PreconditionError);
}

TEST_CASE("normal form jets specialize b") {
  const NormalForm& i2 = *find_normal_form("I2");
  CHECK(i2.parametric());
  auto j = i2.jet(Rational(3));
  CHECK(j.poly().coeff(Monomial{4, 0, 0}) == Rational(3));
  CHECK(find_normal_form("Inr")->order == 5);
  CHECK_FALSE(find_normal_form("Qd")->parametric());
}

TEST_CASE("verification of single entries") {
  auto r = verify_entry(*find_entry("N3"), std::nullopt, 6);
  CHECK(r.pass);
  CHECK(r.data["isotropy_dim"] == 2);
  CHECK(r.data["cubic_type"] == "I3");
  auto bad = verify_entry(*find_entry("N4"), Rational(3), 6);
  CHECK(bad.pass);
  auto q = verify_surface(entry_spec(*find_entry("N1")), 6, std::size_t(3));
  CHECK_FALSE(q.pass);
}

TEST_CASE("verify and symmetry agree on the algebra") {
  const CatalogEntry& e = *find_entry("N11");
  auto spec = entry_spec(e);
  auto a = analyze_surface(spec, 6);
  auto jet = jet_from_json(jet_json(expand_graph(spec, 6)));
  auto direct = full_algebra(jet.truncated(6));
  CHECK(algebra_json(direct) == algebra_json(a.algebra));
}

TEST_CASE("variants are rejected and the replacement is homogeneous") {
  for (std::size_t i = 0; i < catalog().variants.size(); ++i) CHECK(reject_variant(i, 6).pass);
  auto first = reject_variant(0, 6);
  CHECK(first.data["closed_at_order"] == 4);
  CHECK(first.data["tangency_fails_at_order"] == 5);
  CHECK(replacement_check(6).pass);
}

TEST_CASE("confirmation of the normal forms") {
  for (const char* id : {"Qd", "I3", "I1.1", "I1.2"}) {
    auto r = confirm_isotropy(*find_normal_form(id), std::nullopt, 6);
    CHECK_MESSAGE(r.pass, id);
  }
  auto i01 = confirm_isotropy(*find_normal_form("I0.1"), Rational(6), 6);
  CHECK(i01.pass);
  CHECK(i01.data["contains_reference_triple"] == true);
  CHECK_THROWS_AS(confirm_isotropy(*find_normal_form("Inr"), Rational(6, 5), 4), PreconditionError);
}

TEST_CASE("discovery per case") {
  struct Expect {
    CaseId c;
    std::set<std::string> forms;
  };
  for (const Expect& e : {Expect{CaseId::NoCubic, {"Qd", "Sp"}}, Expect{CaseId::I3, {"I3", "Inr"}},
                          Expect{CaseId::I2, {"I2"}}, Expect{CaseId::I1, {"I1.1", "I1.2"}},
                          Expect{CaseId::I0, {"I0.1", "I0.2", "I0.3"}}, Expect{CaseId::Inr, {"Inr"}}}) {
    Discovery d = discover(e.c);
    std::set<std::string> found;
    for (const auto* comp : d.distinct())
      for (const auto& m : comp->matches) found.insert(m.normal_form);
    CHECK_MESSAGE(found == e.forms, to_string(e.c));
    CHECK(d.report().pass);
  }
}

TEST_CASE("I1 discovery counts") {
  Discovery d = discover(CaseId::I1);
  CHECK(d.free_unknowns == 18);
  CHECK(d.constraints == 41);
  CHECK(d.solutions.points.size() == 2);
  CHECK(d.solutions.families.empty());
}

TEST_CASE("normal form matching recovers b") {
  const NormalForm& i01 = *find_normal_form("I0.1");
  Jet<RatFunc> j = i01.symbolic_jet();
  auto b = match_normal_form(j, i01);
  REQUIRE(b);
  CHECK(*b == RatFunc::param());
  auto at6 = specialize(j, Rational(6));
  REQUIRE(at6);
  Jet<RatFunc> lifted(lift<RatFunc>(at6->poly()), at6->order());
  auto b6 = match_normal_form(lifted, i01);
  REQUIRE(b6);
  CHECK(*b6 == RatFunc(Rational(6)));
}

TEST_CASE("catalog-level checks") {
  CHECK(check_overlaps_and_maps(6).pass);
  CHECK(real_catalog_checks(6).pass);
  CHECK(coordinate_fixtures(6).pass);
  CHECK(normal_form_table().size() == 10);
}
