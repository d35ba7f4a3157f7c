#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"

#include <noeth/noeth.hpp>

using namespace noeth;

namespace {

FiniteSpace fan() {
  return build_space({"eta", "p", "q"}, {{"p", "eta"}, {"q", "eta"}});
}

Measure mu1(const FiniteSpace& s) {
  std::map<Mask, Rational, CanonicalMaskLess> coef;
  coef[s.all_mask()] = Rational(1) / 2;
  coef[s.point_mask("p")] = Rational(1) / 3;
  coef[s.point_mask("q")] = Rational(1) / 6;
  return make_measure(s, std::move(coef));
}

}  // namespace

TEST_CASE("make_measure enforces normal form") {
  const FiniteSpace s = fan();
  std::map<Mask, Rational, CanonicalMaskLess> coef;
  coef[s.point_mask("p") | s.point_mask("q")] = Rational(1);
  REQUIRE_THROWS_AS(make_measure(s, std::move(coef)), ValidationError);

  std::map<Mask, Rational, CanonicalMaskLess> zero;
  zero[s.point_mask("p")] = Rational(0);
  REQUIRE(make_measure(s, std::move(zero)).coefficients.empty());
}

TEST_CASE("measure_of_closed sums contained atoms") {
  const FiniteSpace s = fan();
  const Measure m = mu1(s);
  const Mask pq = s.point_mask("p") | s.point_mask("q");
  // [DERIVED] atom containment: {p} alone, then {p}+{q}, then all three.
  REQUIRE(measure_of_closed(s, m, s.point_mask("p")) == Rational(1) / 3);
  REQUIRE(measure_of_closed(s, m, pq) == Rational(1) / 2);
  REQUIRE(measure_of_closed(s, m, s.all_mask()) == Rational(1));
  REQUIRE(measure_of_closed(s, m, Mask(0)) == Rational(0));
  REQUIRE_THROWS_AS(measure_of_closed(s, m, s.point_mask("eta")), ValidationError);
}

TEST_CASE("modularity holds exactly on closed sets") {
  SplitMix64 rng(301);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 1 + rng.below(7);
    const auto pairs = oracle::random_pairs(rng, n);
    const FiniteSpace s = oracle::space_from_pairs(pairs, n);
    const Measure mu = gen::measure(rng, s, 3, Rational(2), false);
    const Mask a = s.closure_mask(rng.next() & s.all_mask());
    const Mask b = s.closure_mask(rng.next() & s.all_mask());
    REQUIRE(measure_of_closed(s, mu, a | b) + measure_of_closed(s, mu, a & b) ==
            measure_of_closed(s, mu, a) + measure_of_closed(s, mu, b));
    REQUIRE(measure_of_closed(s, mu, a) == oracle::measure_on_closed(mu, a));
  }
}

TEST_CASE("intersection classification is never undetermined") {
  const FiniteSpace s = fan();
  const IrreducibleClosed whole = irreducible_from_mask(s, s.all_mask());
  // {eta} meets the generic point of X.
  REQUIRE(classify_intersection(s, s.point_mask("eta"), whole) == IntersectionType::Type1);
  // {p, q} misses it.
  REQUIRE(classify_intersection(s, s.point_mask("p") | s.point_mask("q"), whole) ==
          IntersectionType::Type2);
  SplitMix64 rng(302);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng.below(6);
    const FiniteSpace s2 = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    const Mask a = rng.next() & s2.all_mask();
    for (const auto& e : s2.irreducibles()) {
      const IntersectionType t = classify_intersection(s2, a, e);
      REQUIRE(t != IntersectionType::Neither);
      REQUIRE((t == IntersectionType::Type1) == ((a & e.generics) != 0));
    }
  }
}

TEST_CASE("measure_of_set charges type-1 intersections fully") {
  const FiniteSpace s = fan();
  const Measure m = mu1(s);
  // {eta} is dense, so it absorbs the whole-space atom only.
  REQUIRE(measure_of_set(s, m, s.point_mask("eta")) == Rational(1) / 2);
  // {p} picks up its own atom; the whole-space atom's generic lies outside.
  REQUIRE(measure_of_set(s, m, s.point_mask("p")) == Rational(1) / 3);
}

TEST_CASE("valuation inversion round-trips random measures") {
  SplitMix64 rng(303);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 1 + rng.below(7);
    const FiniteSpace s = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    const Measure mu = gen::measure(rng, s, 1 + rng.below(4), Rational(3), false);
    const Measure back =
        from_closed_set_values(s, [&](Mask f) { return measure_of_closed(s, mu, f); });
    REQUIRE(back.coefficients == mu.coefficients);
  }
}

TEST_CASE("valuation inversion rejects non-modular valuations") {
  const FiniteSpace s = fan();
  // v(F) = |F|^2 is strictly supermodular on the incomparable pair {p}, {q}.
  const auto v = [&](Mask f) { return Rational(std::popcount(f) * std::popcount(f)); };
  REQUIRE_THROWS_AS(from_closed_set_values(s, v), ValidationError);
}

TEST_CASE("valuation inversion enforces positivity only on demand") {
  const FiniteSpace s = fan();
  Measure signed_mu = zero_measure(s);
  signed_mu.coefficients[s.point_mask("p")] = Rational(-1);
  signed_mu.coefficients[s.all_mask()] = Rational(2);
  const auto v = [&](Mask f) { return measure_of_closed(s, signed_mu, f); };
  REQUIRE(from_closed_set_values(s, v, false).coefficients == signed_mu.coefficients);
  REQUIRE_THROWS_AS(from_closed_set_values(s, v, true), ValidationError);
}

TEST_CASE("integration against the fixture") {
  const FiniteSpace s = fan();
  const RealFunction tau1 = make_function(
      s, std::map<std::string, Rational>{
             {"eta", Rational(0)}, {"p", Rational(1)}, {"q", Rational(3)}});
  // [DERIVED] 1/2*0 + 1/3*1 + 1/6*3 = 5/6.
  REQUIRE(integrate(s, mu1(s), tau1) == Rational(5) / 6);
  REQUIRE(integrate(s, mu1(s), constant_function(s, Rational(7))) == Rational(7));
}

TEST_CASE("integration is linear and respects char functions") {
  SplitMix64 rng(304);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng.below(6);
    const FiniteSpace s = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    const Measure mu = gen::measure(rng, s, 3, Rational(2), false);
    const Measure nu = gen::measure(rng, s, 3, Rational(2), false);
    const RealFunction f = gen::usc_function(rng, s);
    const Rational lhs = integrate(s, measure_add(s, mu, nu), f);
    REQUIRE(lhs == integrate(s, mu, f) + integrate(s, nu, f));
    // Characteristic functions integrate to the measure of their set.
    const Mask e = s.closure_mask(rng.next() & s.all_mask());
    REQUIRE(integrate(s, mu, char_function(s, closed_set(s, e))) ==
            measure_of_closed(s, mu, e));
  }
}

TEST_CASE("jordan decomposition and total variation") {
  const FiniteSpace s = fan();
  Measure m = zero_measure(s);
  m.coefficients[s.point_mask("p")] = Rational(2);
  m.coefficients[s.point_mask("q")] = Rational(-3) / 2;
  const auto [plus, minus] = jordan_decompose(s, m);
  REQUIRE(is_positive(plus));
  REQUIRE(is_positive(minus));
  REQUIRE(plus.coefficients.at(s.point_mask("p")) == Rational(2));
  REQUIRE(minus.coefficients.at(s.point_mask("q")) == Rational(3) / 2);
  REQUIRE(total_variation(m) == Rational(7) / 2);
  REQUIRE(total_mass(m) == Rational(1) / 2);

  SplitMix64 rng(305);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng.below(6);
    const FiniteSpace s2 = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    const Measure mu = gen::measure(rng, s2, 4, Rational(3), false);
    const auto [pos, neg] = jordan_decompose(s2, mu);
    REQUIRE(is_positive(pos));
    REQUIRE(is_positive(neg));
    REQUIRE(measure_add(s2, pos, measure_scale(neg, Rational(-1))).coefficients ==
            mu.coefficients);
    REQUIRE(total_variation(mu) == total_mass(pos) + total_mass(neg));
  }
}

TEST_CASE("weak distance is a metric matching the oracle") {
  const FiniteSpace s = fan();
  REQUIRE(weak_distance(s, dirac(s, "p"), dirac(s, "q")) == Rational(1));
  REQUIRE(weak_distance(s, dirac(s, "eta"), dirac(s, "eta")) == Rational(0));

  SplitMix64 rng(306);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng.below(6);
    const auto pairs = oracle::random_pairs(rng, n);
    const FiniteSpace s2 = oracle::space_from_pairs(pairs, n);
    const oracle::Preorder p = oracle::make_preorder(n, pairs);
    const Measure a = gen::measure(rng, s2, 3, Rational(2), false);
    const Measure b = gen::measure(rng, s2, 3, Rational(2), false);
    const Measure c = gen::measure(rng, s2, 3, Rational(2), false);
    const Rational dab = weak_distance(s2, a, b);
    REQUIRE(dab == oracle::weak_distance(p, a, b));
    REQUIRE(dab == weak_distance(s2, b, a));
    REQUIRE((dab == 0) == (a.coefficients == b.coefficients));
    REQUIRE(dab <= weak_distance(s2, a, c) + weak_distance(s2, c, b));
  }
}

TEST_CASE("completion embedding of measures is isometric and integral-preserving") {
  SplitMix64 rng(307);
  for (int iter = 0; iter < 80; ++iter) {
    const std::size_t n = 1 + rng.below(6);
    const FiniteSpace s = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    const Completion c = complete_space(s);
    const FiniteSpace& hat = c.completed();
    const Measure mu = gen::measure(rng, s, 3, Rational(2), false);
    const Measure nu = gen::measure(rng, s, 3, Rational(2), false);
    const Measure jmu = j_embed(s, mu, c);
    const Measure jnu = j_embed(s, nu, c);
    REQUIRE(weak_distance(hat, jmu, jnu) == weak_distance(s, mu, nu));
    // Measures of corresponding closed sets agree.
    const Mask e = s.closure_mask(rng.next() & s.all_mask());
    REQUIRE(measure_of_closed(hat, jmu, c.v_set(s, closed_set(s, e)).mask) ==
            measure_of_closed(s, mu, e));
    // Integrals of transported functions agree.
    const RealFunction f = gen::usc_function(rng, s);
    const SCFunction sc = sc_decompose(s, f);
    REQUIRE(integrate(hat, jmu, eta_transport(s, sc, c)) == integrate(s, mu, sc));
  }
}

TEST_CASE("measure_from_irreducible_values inverts coordinates") {
  SplitMix64 rng(308);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng.below(6);
    const FiniteSpace s = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < s.irreducibles().size(); ++i)
      vals.push_back(Rational(rng.range(-6, 6)) / 3);
    const Measure mu = measure_from_irreducible_values(s, vals);
    for (std::size_t i = 0; i < s.irreducibles().size(); ++i)
      REQUIRE(measure_of_closed(s, mu, s.irreducibles()[i].set) == vals[i]);
  }
}

TEST_CASE("extractor: oscillating sequence locks one parity") {
  const FiniteSpace s = fan();
  const auto seq = gen::oscillating_sequence(dirac(s, "p"), dirac(s, "q"));
  const ExtractionResult r = extract_convergent_subsequence(s, seq, 50, Rational(1));
  REQUIRE(r.indices.size() == 50);
  // One parity survives in full; which one is an implementation detail of
  // the tie rule, but the subsequence must be exactly constant either way.
  const std::size_t parity = r.indices.front() % 2;
  for (const std::size_t i : r.indices) REQUIRE(i % 2 == parity);
  const Measure expect = parity == 0 ? dirac(s, "p") : dirac(s, "q");
  REQUIRE(r.limit.coefficients == expect.coefficients);
  for (const Rational& d : r.distances) REQUIRE(d == 0);

  // The extraction is deterministic.
  const ExtractionResult again = extract_convergent_subsequence(s, seq, 50, Rational(1));
  REQUIRE(again.indices == r.indices);
  REQUIRE(again.limit.coefficients == r.limit.coefficients);
}

TEST_CASE("extractor: drifting sequence converges to its target") {
  const FiniteSpace s = fan();
  Measure target = zero_measure(s);
  target.coefficients[s.point_mask("p")] = Rational(1) / 2;
  target.coefficients[s.point_mask("q")] = Rational(1) / 2;
  Measure direction = zero_measure(s);
  direction.coefficients[s.point_mask("p")] = Rational(1);
  direction.coefficients[s.point_mask("q")] = Rational(-1);
  const auto seq = gen::drifting_sequence(s, target, direction);
  const ExtractionResult r = extract_convergent_subsequence(s, seq, 50, Rational(2));
  REQUIRE(r.indices.size() == 50);
  for (std::size_t i = 1; i < r.indices.size(); ++i) REQUIRE(r.indices[i - 1] < r.indices[i]);
  for (std::size_t i = 1; i < r.distances.size(); ++i)
    REQUIRE(r.distances[i] <= r.distances[i - 1]);
  REQUIRE(r.distances[49] <= Rational(1) / 1000);
}

TEST_CASE("extractor rejects sequences that break the TV bound") {
  const FiniteSpace s = fan();
  const auto seq = [&](std::size_t) { return measure_scale(dirac(s, "p"), Rational(3)); };
  REQUIRE_THROWS_AS(extract_convergent_subsequence(s, seq, 5, Rational(1)), ValidationError);
}

TEST_CASE("extractor handles constant sequences trivially") {
  const FiniteSpace s = fan();
  const Measure m = mu1(s);
  const auto seq = [&](std::size_t) { return m; };
  const ExtractionResult r = extract_convergent_subsequence(s, seq, 10, Rational(1));
  REQUIRE(r.limit.coefficients == m.coefficients);
  for (const Rational& d : r.distances) REQUIRE(d == 0);
}
