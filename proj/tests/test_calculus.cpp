#include <doctest.h>

#include <map>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include <unitalign/calculus.hpp>
#include <unitalign/errors.hpp>

#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace unitalign;

namespace {

const std::string kNs = "http://si/";

Iri u(const std::string& name) { return Iri(kNs + name); }

std::map<Iri, DimensionVector> siBases() {
  return {{u("meter"), DimensionVector::axis(0)},
          {u("kilogram"), DimensionVector::axis(1)},
          {u("second"), DimensionVector::axis(2)},
          {u("ampere"), DimensionVector::axis(3)},
          {u("kelvin"), DimensionVector::axis(4)},
          {u("mole"), DimensionVector::axis(5)},
          {u("candela"), DimensionVector::axis(6)}};
}

// A little SI fragment shared by the canonicalization tests.
std::map<Iri, UnitExpression> siDefs() {
  std::map<Iri, UnitExpression> defs;
  auto def = [&](const std::string& name, UnitExpression e) {
    defs.emplace(u(name), std::move(e));
  };
  def("millimeter", UnitExpression::make(Rational(1, 1000), Rational(0), {{u("meter"), 1}}, {}));
  def("day", UnitExpression::make(Rational(86400), Rational(0), {{u("second"), 1}}, {}));
  def("week", UnitExpression::make(Rational(7), Rational(0), {{u("day"), 1}}, {}));
  def("millimeter_per_day", UnitExpression::make(Rational(1), Rational(0),
                                                 {{u("millimeter"), 1}}, {{u("day"), 1}}));
  def("newton", UnitExpression::make(Rational(1), Rational(0),
                                     {{u("meter"), 1}, {u("kilogram"), 1}},
                                     {{u("second"), 2}}));
  def("joule", UnitExpression::make(Rational(1), Rational(0),
                                    {{u("newton"), 1}, {u("meter"), 1}}, {}));
  def("tesla", UnitExpression::make(Rational(1), Rational(0), {{u("newton"), 1}},
                                    {{u("ampere"), 1}, {u("meter"), 1}}));
  def("celsius", UnitExpression::make(Rational(1), Rational(5463, 20), {{u("kelvin"), 1}}, {}));
  def("fahrenheit", UnitExpression::make(Rational(5, 9), Rational(-160, 9),
                                         {{u("celsius"), 1}}, {}));
  def("radian", UnitExpression::make(Rational(1), Rational(0), {}, {}));
  return defs;
}

UnitContext siContext() { return UnitContext(siDefs(), siBases()); }

DimensionVector dims(int l, int m, int t, int i = 0, int k = 0, int n = 0, int j = 0) {
  DimensionVector v;
  v.exponents = {l, m, t, i, k, n, j};
  return v;
}

}  // namespace

TEST_CASE("dimension vector basics") {
  CHECK(DimensionVector::axisOf("length") == 0);
  CHECK(DimensionVector::axisOf("mass") == 1);
  CHECK(DimensionVector::axisOf("time") == 2);
  CHECK(DimensionVector::axisOf("electric-current") == 3);
  CHECK(DimensionVector::axisOf("temperature") == 4);
  CHECK(DimensionVector::axisOf("amount-of-substance") == 5);
  CHECK(DimensionVector::axisOf("luminosity") == 6);
  CHECK_FALSE(DimensionVector::axisOf("flavor").has_value());

  CHECK(DimensionVector().isZero());
  CHECK(DimensionVector::axis(2).isSingleAxis());
  CHECK_FALSE(dims(1, 1, 0).isSingleAxis());
  CHECK_FALSE(dims(2, 0, 0).isSingleAxis());
  CHECK_FALSE(DimensionVector().isSingleAxis());

  CHECK(dims(1, 0, -1) + dims(0, 1, -1) == dims(1, 1, -2));
  CHECK(dims(1, 1, -2) - dims(2, 0, 0) == dims(-1, 1, -2));
  CHECK(DimensionVector::axis(0) * 3 == dims(3, 0, 0));
  CHECK(dims(1, 1, -2).str() == "(1, 1, -2, 0, 0, 0, 0)");
  CHECK_THROWS_AS(DimensionVector::axis(7), std::out_of_range);
}

TEST_CASE("context validates its base units") {
  std::map<Iri, DimensionVector> bad = {{u("weird"), dims(1, 1, 0)}};
  CHECK_THROWS_AS(UnitContext({}, bad), std::invalid_argument);
  std::map<Iri, DimensionVector> dup = {{u("meter"), DimensionVector::axis(0)},
                                        {u("metre"), DimensionVector::axis(0)}};
  CHECK_THROWS_AS(UnitContext({}, dup), std::invalid_argument);

  // A definition for a base unit is dropped: bases are axioms.
  std::map<Iri, UnitExpression> defs;
  defs.emplace(u("meter"),
               UnitExpression::make(Rational(2), Rational(0), {{u("second"), 1}}, {}));
  UnitContext ctx(std::move(defs), siBases());
  CHECK(ctx.definitions().count(u("meter")) == 0);
  CHECK(canonicalize(u("meter"), ctx) ==
        CanonicalForm{Rational(1), Rational(0), DimensionVector::axis(0)});
}

TEST_CASE("force reduces to meter kilogram per second squared") {
  auto ctx = siContext();
  CHECK(canonicalize(u("newton"), ctx) ==
        CanonicalForm{Rational(1), Rational(0), dims(1, 1, -2)});
  CHECK(canonicalize(u("joule"), ctx) ==
        CanonicalForm{Rational(1), Rational(0), dims(2, 1, -2)});
}

TEST_CASE("scaled quotient gets an exact rational multiplier") {
  auto ctx = siContext();
  auto form = canonicalize(u("millimeter_per_day"), ctx);
  CHECK(form.multiplier == Rational(1, 86400000));
  CHECK(form.offset.isZero());
  CHECK(form.dims == dims(1, 0, -1));
}

TEST_CASE("scaling chains multiply through") {
  auto ctx = siContext();
  auto week = canonicalize(u("week"), ctx);
  CHECK(week.multiplier == Rational(604800));
  CHECK(week.dims == DimensionVector::axis(2));
}

TEST_CASE("affine chains compose offsets") {
  auto ctx = siContext();
  auto celsius = canonicalize(u("celsius"), ctx);
  CHECK(celsius.multiplier == Rational(1));
  CHECK(celsius.offset == Rational(5463, 20));
  CHECK(celsius.dims == DimensionVector::axis(4));

  // fahrenheit -> celsius -> kelvin: x K = 5/9 x + 45967/180.
  auto fahrenheit = canonicalize(u("fahrenheit"), ctx);
  CHECK(fahrenheit.multiplier == Rational(5, 9));
  CHECK(fahrenheit.offset == Rational(45967, 180));
  CHECK(fahrenheit.dims == DimensionVector::axis(4));
}

TEST_CASE("dimensionless units canonicalize to the zero vector") {
  auto ctx = siContext();
  auto radian = canonicalize(u("radian"), ctx);
  CHECK(radian.multiplier == Rational(1));
  CHECK(radian.dims.isZero());
  CHECK(radian.str() == "multiplier 1, dimensions (0, 0, 0, 0, 0, 0, 0)");
}

TEST_CASE("an offset unit with net single-axis dimension is legal") {
  auto defs = siDefs();
  defs.emplace(u("odd_scale"),
               UnitExpression::make(Rational(2), Rational(3), {{u("kelvin"), 2}},
                                    {{u("kelvin"), 1}}));
  UnitContext ctx(std::move(defs), siBases());
  auto form = canonicalize(u("odd_scale"), ctx);
  CHECK(form.multiplier == Rational(2));
  CHECK(form.offset == Rational(3));
  CHECK(form.dims == DimensionVector::axis(4));
}

TEST_CASE("canonicalization failure modes") {
  auto ctx = siContext();
  CHECK_THROWS_AS(canonicalize(u("nonexistent"), ctx), UnknownUnit);

  {
    auto defs = siDefs();
    defs.emplace(u("selfref"),
                 UnitExpression::make(Rational(2), Rational(0), {{u("selfref"), 1}}, {}));
    UnitContext c(std::move(defs), siBases());
    CHECK_THROWS_AS(canonicalize(u("selfref"), c), CyclicDefinition);
  }
  {
    auto defs = siDefs();
    defs.emplace(u("ying"), UnitExpression::make(Rational(2), Rational(0), {{u("yang"), 1}}, {}));
    defs.emplace(u("yang"), UnitExpression::make(Rational(3), Rational(0), {{u("ying"), 1}}, {}));
    UnitContext c(std::move(defs), siBases());
    CHECK_THROWS_AS(canonicalize(u("ying"), c), CyclicDefinition);
    CHECK_THROWS_AS(canonicalize(u("yang"), c), CyclicDefinition);
  }
  {
    // Offset units cannot participate in products, powers, or quotients.
    auto defs = siDefs();
    defs.emplace(u("celsius_meter"),
                 UnitExpression::make(Rational(1), Rational(0),
                                      {{u("celsius"), 1}, {u("meter"), 1}}, {}));
    defs.emplace(u("per_celsius"),
                 UnitExpression::make(Rational(1), Rational(0), {}, {{u("celsius"), 1}}));
    defs.emplace(u("celsius_squared"),
                 UnitExpression::make(Rational(1), Rational(0), {{u("celsius"), 2}}, {}));
    UnitContext c(std::move(defs), siBases());
    CHECK_THROWS_AS(canonicalize(u("celsius_meter"), c), OffsetComposition);
    CHECK_THROWS_AS(canonicalize(u("per_celsius"), c), OffsetComposition);
    CHECK_THROWS_AS(canonicalize(u("celsius_squared"), c), OffsetComposition);
  }
  {
    // An offset over a composite dimension is rejected even when a parent
    // would cancel it numerically.
    auto defs = siDefs();
    defs.emplace(u("shifted_force"),
                 UnitExpression::make(Rational(1), Rational(-5), {{u("newton"), 1}}, {}));
    defs.emplace(u("cancels"),
                 UnitExpression::make(Rational(1), Rational(5), {{u("shifted_force"), 1}}, {}));
    UnitContext c(std::move(defs), siBases());
    CHECK_THROWS_AS(canonicalize(u("shifted_force"), c), OffsetComposition);
    CHECK_THROWS_AS(canonicalize(u("cancels"), c), OffsetComposition);
  }
}

TEST_CASE("expansion keeps both sides uncancelled; reduce cancels by net exponent") {
  auto ctx = siContext();
  UnitExpression expanded = expandToBase(u("tesla"), ctx);
  CHECK(expanded.str() == "meter * kilogram / (second^2 * ampere * meter)");

  UnitExpression reduced = reduce(expanded);
  CHECK(reduced.str() == "kilogram / (second^2 * ampere)");

  // Same-side repeats merge during expansion.
  auto defs = siDefs();
  defs.emplace(u("meter_meter"),
               UnitExpression::make(Rational(1), Rational(0),
                                    {{u("meter"), 1}, {u("meter"), 2}}, {}));
  UnitContext c(std::move(defs), siBases());
  CHECK(expandToBase(u("meter_meter"), c).str() == "meter^3");
}

TEST_CASE("expansion agrees with canonicalization") {
  std::mt19937 rng(77001);
  for (int i = 0; i < 50; ++i) {
    gen::DefinitionGraph g = gen::randomDefinitionGraph(rng);
    UnitContext ctx(g.defs, g.bases);
    for (const auto& unit : g.derived) {
      CanonicalForm form = canonicalize(unit, ctx);
      UnitExpression flat = expandToBase(unit, ctx);
      CHECK(flat.multiplier() == form.multiplier);
      DimensionVector viaExpansion;
      for (const auto& f : flat.numerator()) {
        viaExpansion = viaExpansion + ctx.baseUnits().at(f.iri) * f.exponent;
      }
      for (const auto& f : flat.denominator()) {
        viaExpansion = viaExpansion - ctx.baseUnits().at(f.iri) * f.exponent;
      }
      CHECK(viaExpansion == form.dims);
    }
  }
}

TEST_CASE("canonicalize agrees with the independent oracle on random graphs") {
  std::mt19937 rng(90210);
  for (int i = 0; i < 200; ++i) {
    gen::DefinitionGraph g = gen::randomDefinitionGraph(rng);
    UnitContext ctx(g.defs, g.bases);
    oracle::Oracle reference(g.defs, g.baseAxes);
    for (const auto& unit : g.derived) {
      oracle::Form expected = reference.canonicalize(unit);
      CanonicalForm actual = canonicalize(unit, ctx);
      CHECK(oracle::agrees(expected, actual));
    }
  }
}

TEST_CASE("value conversion through base space") {
  auto ctx = siContext();
  auto week = canonicalize(u("week"), ctx);
  auto second = canonicalize(u("second"), ctx);
  CHECK(convertValue(Rational(1), week, second) == Rational(604800));
  CHECK(convertValue(Rational(604800), second, week) == Rational(1));

  auto celsius = canonicalize(u("celsius"), ctx);
  auto kelvin = canonicalize(u("kelvin"), ctx);
  auto fahrenheit = canonicalize(u("fahrenheit"), ctx);
  CHECK(convertValue(Rational(25), celsius, kelvin) == Rational(5963, 20));
  CHECK(convertValue(Rational(212), fahrenheit, celsius) == Rational(100));
  CHECK(convertValue(Rational(-40), fahrenheit, celsius) == Rational(-40));

  auto meter = canonicalize(u("meter"), ctx);
  CHECK_THROWS_AS(convertValue(Rational(1), meter, second), DimensionMismatch);
}

TEST_CASE("memoized forms are consistent across threads") {
  auto ctx = siContext();
  std::vector<Iri> units = {u("newton"), u("joule"), u("tesla"), u("week"),
                            u("fahrenheit"), u("millimeter_per_day")};
  std::vector<std::map<std::string, CanonicalForm>> results(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (const auto& unit : units) {
        results[static_cast<std::size_t>(t)].emplace(unit.value(),
                                                     canonicalize(unit, ctx));
      }
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) {
    for (const auto& unit : units) {
      CHECK(results[0].at(unit.value()) ==
            results[static_cast<std::size_t>(t)].at(unit.value()));
    }
  }
  // And the memo serves repeated lookups.
  CHECK(ctx.memoLookup(u("newton")).has_value());
}
