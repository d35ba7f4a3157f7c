#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"

#include <noeth/noeth.hpp>

using namespace noeth;

namespace {

FiniteSpace fan() {
  return build_space({"eta", "p", "q"}, {{"p", "eta"}, {"q", "eta"}});
}

ContinuousMap sigma(const FiniteSpace& s) {
  return make_map(s, std::map<std::string, std::string>{
                         {"eta", "eta"}, {"p", "q"}, {"q", "p"}});
}

ContinuousMap gmap(const FiniteSpace& s) {
  return make_map(s, std::map<std::string, std::string>{
                         {"eta", "eta"}, {"p", "p"}, {"q", "p"}});
}

Measure empirical_oracle(const FiniteSpace& s, const ContinuousMap& f, std::size_t x,
                         std::size_t n) {
  Measure sum = zero_measure(s);
  std::size_t cur = x;
  for (std::size_t i = 0; i < n; ++i) {
    sum = measure_add(s, sum, dirac(s, cur));
    cur = f.to[cur];
  }
  return measure_scale(sum, Rational(1) / static_cast<long long>(n));
}

}  // namespace

TEST_CASE("make_map enforces monotonicity") {
  const FiniteSpace s = build_space({"a", "b", "c"}, {{"b", "a"}, {"c", "b"}});
  REQUIRE_THROWS_AS(
      make_map(s, std::map<std::string, std::string>{{"a", "c"}, {"b", "b"}, {"c", "a"}}),
      ValidationError);
  const ContinuousMap ok =
      make_map(s, std::map<std::string, std::string>{{"a", "a"}, {"b", "b"}, {"c", "b"}});
  REQUIRE(!ok.surjective);
  const FiniteSpace f = fan();
  REQUIRE(sigma(f).surjective);
  REQUIRE(!gmap(f).surjective);
}

TEST_CASE("continuity matches monotonicity on random assignments") {
  SplitMix64 rng(401);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + rng.below(6);
    const FiniteSpace s = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    std::vector<std::size_t> to(n);
    for (std::size_t i = 0; i < n; ++i) to[i] = rng.below(n);
    bool monotone = true;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (s.le(y, x) && !s.le(to[y], to[x])) monotone = false;
    if (monotone) {
      const ContinuousMap f = make_map(s, to);
      // Preimages partition the space.
      Mask all = 0;
      for (std::size_t x = 0; x < n; ++x) all |= f.preimage[x];
      REQUIRE(all == s.all_mask());
    } else {
      REQUIRE_THROWS_AS(make_map(s, to), ValidationError);
    }
  }
}

TEST_CASE("pushforward moves atoms through generic points") {
  const FiniteSpace s = fan();
  const ContinuousMap sg = sigma(s);
  REQUIRE(pushforward(s, sg, dirac(s, "p")).coefficients == dirac(s, "q").coefficients);
  // The whole-space atom is anchored at eta, a fixed point.
  Measure whole = zero_measure(s);
  whole.coefficients[s.all_mask()] = Rational(1);
  REQUIRE(pushforward(s, sg, whole).coefficients == whole.coefficients);
  REQUIRE(pushforward(s, gmap(s), dirac(s, "q")).coefficients == dirac(s, "p").coefficients);
}

TEST_CASE("pushforward is linear and adjoint to composition") {
  SplitMix64 rng(402);
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t n = 1 + rng.below(7);
    const FiniteSpace s = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    const ContinuousMap f = gen::map(rng, s);
    const Measure mu = gen::measure(rng, s, 3, Rational(2), false);
    const Measure nu = gen::measure(rng, s, 3, Rational(2), false);

    const Measure push_sum = pushforward(s, f, measure_add(s, mu, nu));
    REQUIRE(push_sum.coefficients ==
            measure_add(s, pushforward(s, f, mu), pushforward(s, f, nu)).coefficients);

    // Integration against h o f equals integration of the pushforward.
    const RealFunction h = gen::usc_function(rng, s);
    std::vector<Rational> composed(n);
    for (std::size_t x = 0; x < n; ++x) composed[x] = h.values[f.to[x]];
    const SCFunction hf = sc_decompose(s, make_function(s, composed));
    REQUIRE(integrate(s, pushforward(s, f, mu), h) == integrate(s, mu, hf));

    // Pushforward respects iteration.
    REQUIRE(pushforward(s, f, pushforward(s, f, mu)).coefficients ==
            pushforward(s, compose(s, f, f), mu).coefficients);
  }
}

TEST_CASE("cycle enumeration on the fixtures") {
  const FiniteSpace s = fan();
  const auto cycles = enumerate_cycles(s, sigma(s));
  REQUIRE(cycles.size() == 2);
  REQUIRE(cycles[0] == std::vector<std::size_t>{s.index("eta")});
  REQUIRE(cycles[1] == std::vector<std::size_t>{s.index("p"), s.index("q")});

  const auto gcycles = enumerate_cycles(s, gmap(s));
  REQUIRE(gcycles.size() == 2);
  REQUIRE(gcycles[0] == std::vector<std::size_t>{s.index("eta")});
  REQUIRE(gcycles[1] == std::vector<std::size_t>{s.index("p")});
}

TEST_CASE("cycles absorb every forward orbit") {
  SplitMix64 rng(403);
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t n = 1 + rng.below(8);
    const FiniteSpace s = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    const ContinuousMap f = gen::map(rng, s);
    const auto cycles = enumerate_cycles(s, f);
    Mask cycle_points = 0;
    for (const auto& c : cycles) {
      // Each cycle is a genuine cycle, rotated to its least point.
      for (std::size_t j = 0; j < c.size(); ++j)
        REQUIRE(f.to[c[j]] == c[(j + 1) % c.size()]);
      REQUIRE(*std::min_element(c.begin(), c.end()) == c.front());
      for (const std::size_t x : c) cycle_points |= Mask(1) << x;
    }
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t cur = x;
      for (std::size_t step = 0; step < n; ++step) cur = f.to[cur];
      REQUIRE(((cycle_points >> cur) & 1u) == 1u);
    }
  }
}

TEST_CASE("ergodic measures are the uniform cycle measures") {
  const FiniteSpace s = fan();
  const auto ms = ergodic_measures(s, sigma(s));
  REQUIRE(ms.size() == 2);
  Measure whole = zero_measure(s);
  whole.coefficients[s.all_mask()] = Rational(1);
  REQUIRE(ms[0].coefficients == whole.coefficients);
  Measure half = zero_measure(s);
  half.coefficients[s.point_mask("p")] = Rational(1) / 2;
  half.coefficients[s.point_mask("q")] = Rational(1) / 2;
  REQUIRE(ms[1].coefficients == half.coefficients);

  SplitMix64 rng(404);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng.below(7);
    const FiniteSpace s2 = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    const ContinuousMap f = gen::map(rng, s2);
    if (!is_zariski(s2)) {
      // Distinct cycles through one specialization class would induce the
      // same measure, so the decomposition refuses non-Zariski spaces.
      REQUIRE_THROWS_AS(ergodic_measures(s2, f), ValidationError);
      continue;
    }
    for (const Measure& mu : ergodic_measures(s2, f)) {
      REQUIRE(is_positive(mu));
      REQUIRE(total_mass(mu) == Rational(1));
      REQUIRE(is_invariant(s2, f, mu));
    }
  }
}

TEST_CASE("forward orbits on the fixtures") {
  const FiniteSpace s = fan();
  const OrbitSummary po = forward_orbit(s, sigma(s), s.index("p"));
  REQUIRE(po.preperiod == 0);
  REQUIRE(po.period == 2);
  REQUIRE(po.points == std::vector<std::size_t>{s.index("p"), s.index("q")});

  const OrbitSummary qo = forward_orbit(s, gmap(s), s.index("q"));
  REQUIRE(qo.preperiod == 1);
  REQUIRE(qo.period == 1);
  REQUIRE(qo.cycle == std::vector<std::size_t>{s.index("p")});

  REQUIRE(omega_limit(s, sigma(s), s.index("p")).mask ==
          (s.point_mask("p") | s.point_mask("q")));
}

TEST_CASE("theorem E: empirical averages approach the cycle measure") {
  const FiniteSpace s = fan();
  const ContinuousMap f = sigma(s);
  const LimitMeasureReport rep = theorem_e_limit(s, f, s.index("p"), 1000);
  REQUIRE(rep.preperiod == 0);
  REQUIRE(rep.period == 2);
  REQUIRE(rep.distance == Rational(0));  // 1000 splits the 2-cycle evenly
  REQUIRE(rep.bound == Rational(2) / 1000);
  REQUIRE(rep.limit.coefficients ==
          uniform_cycle_measure(s, {s.index("p"), s.index("q")}).coefficients);

  const LimitMeasureReport odd = theorem_e_limit(s, f, s.index("p"), 999);
  REQUIRE(odd.distance > 0);
  REQUIRE(odd.distance <= odd.bound);
}

TEST_CASE("theorem E matches a step-by-step oracle and its bound") {
  SplitMix64 rng(405);
  for (int iter = 0; iter < 80; ++iter) {
    const std::size_t n_pts = 1 + rng.below(7);
    const FiniteSpace s = oracle::space_from_pairs(oracle::random_pairs(rng, n_pts), n_pts);
    const ContinuousMap f = gen::map(rng, s);
    const std::size_t x = rng.below(n_pts);
    const std::size_t n = 1 + rng.below(200);
    const LimitMeasureReport rep = theorem_e_limit(s, f, x, n);
    const Measure expect = empirical_oracle(s, f, x, n);
    REQUIRE(rep.empirical.coefficients == expect.coefficients);
    REQUIRE(rep.distance == weak_distance(s, rep.empirical, rep.limit));
    REQUIRE(rep.distance <= rep.bound);
    REQUIRE(rep.bound == Rational(static_cast<long long>(rep.preperiod + rep.period)) /
                             static_cast<long long>(n));
    // The limit is invariant and supported on the orbit cycle.
    REQUIRE(is_invariant(s, f, rep.limit));
  }
}

TEST_CASE("theorem F on the fixture reverse orbit") {
  const FiniteSpace s = fan();
  const ContinuousMap f = sigma(s);
  ReverseOrbitSpec ro;
  ro.prefix = {s.index("p")};
  ro.cycle = {s.index("q"), s.index("p")};
  validate_reverse_orbit(s, f, ro);

  const LimitMeasureReport rep = theorem_f_limit(s, f, ro, 1000);
  Measure half = zero_measure(s);
  half.coefficients[s.point_mask("p")] = Rational(1) / 2;
  half.coefficients[s.point_mask("q")] = Rational(1) / 2;
  REQUIRE(rep.limit.coefficients == half.coefficients);
  REQUIRE(rep.distance <= rep.bound);
  REQUIRE(rep.bound == Rational(3) / 1000);
  REQUIRE(alpha_limit(s, f, ro).mask == (s.point_mask("p") | s.point_mask("q")));
}

TEST_CASE("theorem F rejects non-surjective maps with an undefined result") {
  const FiniteSpace s = fan();
  const ContinuousMap g = gmap(s);
  ReverseOrbitSpec ro;
  ro.prefix = {s.index("p")};
  ro.cycle = {s.index("q"), s.index("p")};
  REQUIRE_THROWS_AS(theorem_f_limit(s, g, ro, 100), UndefinedResultError);
  REQUIRE_THROWS_AS(alpha_limit(s, g, ro), UndefinedResultError);
}

TEST_CASE("reverse orbit validation pinpoints broken links") {
  const FiniteSpace s = fan();
  const ContinuousMap f = sigma(s);
  ReverseOrbitSpec bad;
  bad.prefix = {s.index("p")};
  bad.cycle = {s.index("p"), s.index("q")};  // seam: f(p) = q, orbit needs p
  REQUIRE_THROWS_AS(validate_reverse_orbit(s, f, bad), ValidationError);
  ReverseOrbitSpec empty;
  REQUIRE_THROWS_AS(validate_reverse_orbit(s, f, empty), ValidationError);
}

TEST_CASE("theorem F empirical matches an explicit backward history") {
  SplitMix64 rng(406);
  for (int iter = 0; iter < 60; ++iter) {
    const gen::DynamicsInstance inst = gen::automorphism_instance(rng, 10);
    const FiniteSpace& s = inst.space;
    const ContinuousMap& f = inst.map;
    REQUIRE(f.surjective);
    // Build a genuine backward orbit by walking the inverse permutation.
    std::vector<std::size_t> inverse(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) inverse[f.to[x]] = x;
    const std::size_t x0 = rng.below(s.size());
    const OrbitSummary orbit = forward_orbit(s, f, x0);  // pure cycle through x0
    ReverseOrbitSpec ro;
    ro.cycle.push_back(x0);
    for (std::size_t cur = inverse[x0]; cur != x0; cur = inverse[cur]) ro.cycle.push_back(cur);
    validate_reverse_orbit(s, f, ro);
    REQUIRE(ro.cycle.size() == orbit.period);

    const std::size_t n = 1 + rng.below(300);
    const LimitMeasureReport rep = theorem_f_limit(s, f, ro, n);
    // Oracle: average diracs along x_0, x_{-1}, .., x_{-(n-1)}.
    Measure sum = zero_measure(s);
    std::size_t cur = x0;
    for (std::size_t i = 0; i < n; ++i) {
      sum = measure_add(s, sum, dirac(s, cur));
      cur = inverse[cur];
    }
    const Measure expect = measure_scale(sum, Rational(1) / static_cast<long long>(n));
    REQUIRE(rep.empirical.coefficients == expect.coefficients);
    REQUIRE(rep.distance <= rep.bound);
  }
}

TEST_CASE("induced map on the completion mirrors the base dynamics") {
  const FiniteSpace s = fan();
  const ContinuousMap f = sigma(s);
  const Completion c = complete_space(s);
  const ContinuousMap induced = induce_on_completion(s, f, c);
  const FiniteSpace& hat = c.completed();
  REQUIRE(induced.surjective);
  // The induced map permutes the embedded closed points and fixes the top.
  const std::size_t ip = c.point_for(s.down(s.index("p")));
  const std::size_t iq = c.point_for(s.down(s.index("q")));
  REQUIRE(induced.to[ip] == iq);
  REQUIRE(induced.to[iq] == ip);
  const std::size_t top = c.point_for(s.all_mask());
  REQUIRE(induced.to[top] == top);
  REQUIRE(enumerate_cycles(hat, induced).size() == 2);

  SplitMix64 rng(407);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t n = 1 + rng.below(6);
    const FiniteSpace s2 = oracle::space_from_pairs(oracle::random_pairs(rng, n), n);
    const ContinuousMap f2 = gen::map(rng, s2);
    const Completion c2 = complete_space(s2);
    const ContinuousMap ind = induce_on_completion(s2, f2, c2);
    // Compatibility: embedding intertwines the two maps.
    for (std::size_t x = 0; x < n; ++x)
      REQUIRE(ind.to[c2.embed_point(s2, x)] == c2.embed_point(s2, f2.to[x]));
    // Pushforward commutes with the measure embedding.
    const Measure mu = gen::measure(rng, s2, 3, Rational(1), true);
    REQUIRE(j_embed(s2, pushforward(s2, f2, mu), c2).coefficients ==
            pushforward(c2.completed(), ind, j_embed(s2, mu, c2)).coefficients);
  }
}
