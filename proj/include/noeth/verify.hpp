#pragma once

// Seeded property batteries over the whole library. Each battery draws its
// own deterministic stream, so runs with equal options produce identical
// reports. Failures carry a replayable witness. Deliberate fault injection
// (mutants) lets callers confirm the batteries can actually fail.

#include <noeth/dinh.hpp>
#include <noeth/generate.hpp>
#include <noeth/io.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace noeth {

struct VerifyOptions {
  std::uint64_t seed = 20260814;
  std::size_t cases = 200;
  std::size_t max_points = 10;
  std::string only;         // run only properties whose name starts with this
  std::string mutant;       // inject the named fault; the run must then fail
  std::string witness_dir;  // where failure witnesses go; empty disables
};

struct PropertyOutcome {
  std::string name;
  bool passed = true;
  std::size_t cases_run = 0;
  std::string detail;
  std::string witness_path;
  double seconds = 0.0;
};

struct VerificationReport {
  std::vector<PropertyOutcome> properties;

  bool all_passed() const {
    for (const auto& p : properties)
      if (!p.passed) return false;
    return true;
  }
};

namespace verify_detail {

struct PropertyFailure {
  std::string detail;
  Json witness;
};

struct Ctx {
  const VerifyOptions& opts;
  SplitMix64 rng;
  std::size_t case_index = 0;

  bool mutant(const char* name) const { return opts.mutant == name; }

  void require(bool cond, const std::string& detail, const Json& witness = Json::object()) const {
    if (cond) return;
    Json w = witness;
    w["case"] = case_index;
    throw PropertyFailure{detail, std::move(w)};
  }

  FiniteSpace random_space(bool allow_classes = true, std::size_t max_override = 0) {
    const std::size_t cap = max_override ? max_override : opts.max_points;
    return gen::space(rng, 1 + rng.below(cap), allow_classes);
  }
};

inline std::uint64_t name_hash(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// -- shared fixtures ---------------------------------------------------------

inline FiniteSpace fixture_fan() {
  return build_space({"eta", "p", "q"}, {{"p", "eta"}, {"q", "eta"}});
}

inline FiniteSpace fixture_chain() {
  return build_space({"a", "b", "c"}, {{"b", "a"}, {"c", "b"}});
}

inline FiniteSpace fixture_fuzzy() {
  return build_space({"u", "v"}, {{"u", "v"}, {"v", "u"}});
}

inline ContinuousMap fixture_sigma(const FiniteSpace& fan) {
  return make_map(fan, std::map<std::string, std::string>{
                           {"eta", "eta"}, {"p", "q"}, {"q", "p"}});
}

inline ContinuousMap fixture_g(const FiniteSpace& fan) {
  return make_map(fan, std::map<std::string, std::string>{
                           {"eta", "eta"}, {"p", "p"}, {"q", "p"}});
}

inline RealFunction fixture_tau1(const FiniteSpace& fan) {
  return make_function(fan, std::map<std::string, Rational>{
                                {"eta", Rational(0)}, {"p", Rational(1)}, {"q", Rational(3)}});
}

// -- batteries ---------------------------------------------------------------

inline void battery_rational_simplest(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    Rational a = make_rational(c.rng.range(-64, 64), c.rng.range(1, 32));
    Rational b = make_rational(c.rng.range(-64, 64), c.rng.range(1, 32));
    if (b < a) std::swap(a, b);
    const Rational r = simplest_in_interval(a, b);
    c.require(a <= r && r <= b, "result escapes the interval");
    const Integer den = boost::multiprecision::denominator(r);
    // Brute force: no rational with a smaller denominator fits. Some k/d
    // lies in [a, b] exactly when floor(b*d) >= ceil(a*d).
    const auto rational_floor = [](const Rational& v) {
      Integer n = boost::multiprecision::numerator(v);
      const Integer d = boost::multiprecision::denominator(v);
      Integer q = n / d;
      if (n < 0 && q * d != n) --q;
      return q;
    };
    for (Integer d = 1; d < den; ++d) {
      const Integer hi_k = rational_floor(b * d);
      const Integer lo_k = -rational_floor(-(a * d));
      c.require(hi_k < lo_k, "a rational with denominator " + d.str() + " fits in [" +
                                 format_rational(a) + ", " + format_rational(b) + "]");
    }
  }
}

inline void battery_topology_closure(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const Mask a = c.rng.next() & s.all_mask();
    const Mask b = c.rng.next() & s.all_mask();
    const Mask ca = s.closure_mask(a);
    c.require((ca & a) == a, "closure does not contain its argument");
    c.require(s.closure_mask(ca) == ca, "closure is not idempotent");
    c.require(s.closure_mask(a | b) == (ca | s.closure_mask(b)),
              "closure does not distribute over union");
    c.require(s.is_closed_mask(a) == (ca == a), "closedness disagrees with closure fixpoint");
    // Independent closedness oracle: every member keeps its whole down set.
    bool oracle = true;
    for (Mask rest = a; rest;) {
      const int x = std::countr_zero(rest);
      rest &= rest - 1;
      if ((s.down(x) & a) != s.down(x)) oracle = false;
    }
    c.require(s.is_closed_mask(a) == oracle, "closedness disagrees with the member oracle",
              Json{{"space", space_to_json(s)}, {"set", s.set_display(a)}});
  }
}

inline void battery_topology_components(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const Mask e = s.closure_mask(c.rng.next() & s.all_mask());
    const auto comps = irreducible_components(s, ClosedSet{s.id(), e});
    const Json witness{{"space", space_to_json(s)}, {"set", s.set_display(e)}};
    Mask covered = 0;
    for (const auto& comp : comps) {
      c.require(is_irreducible_closed(s, comp.set), "component is not irreducible closed", witness);
      c.require((comp.set & e) == comp.set, "component escapes the ambient set", witness);
      covered |= comp.set;
    }
    c.require(covered == e, "components do not cover the set", witness);
    for (std::size_t i = 0; i < comps.size(); ++i)
      for (std::size_t j = 0; j < comps.size(); ++j)
        c.require(i == j || (comps[i].set & comps[j].set) != comps[i].set,
                  "one component contains another", witness);
    // Maximality against every irreducible closed subset of E.
    for (const auto& irr : s.irreducibles()) {
      if ((irr.set & e) != irr.set) continue;
      bool inside = false;
      for (const auto& comp : comps)
        if ((irr.set & comp.set) == irr.set) inside = true;
      c.require(inside, "an irreducible subset escapes all components", witness);
    }
    if (e == 0) c.require(comps.empty(), "empty set has no components", witness);
  }
}

inline void battery_topology_completion(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const Completion comp = complete_space(s);
    const FiniteSpace& hat = comp.completed();
    const Json witness{{"space", space_to_json(s)}};
    c.require(is_zariski(hat), "completion is not zariski", witness);
    c.require(hat.size() == s.irreducibles().size(),
              "completion size differs from the irreducible count", witness);
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = 0; y < s.size(); ++y)
        c.require(s.le(y, x) == hat.le(comp.embed_point(s, y), comp.embed_point(s, x)),
                  "embedding does not preserve and reflect specialization", witness);
    const auto base_closed = enumerate_closed_masks(s);
    const auto hat_closed = enumerate_closed_masks(hat);
    c.require(base_closed.size() == hat_closed.size(),
              "closed set lattices have different sizes", witness);
    for (std::size_t i = 0; i < base_closed.size(); ++i)
      for (std::size_t j = 0; j < base_closed.size(); ++j) {
        const Mask vi = comp.v_set(s, ClosedSet{s.id(), base_closed[i]}).mask;
        const Mask vj = comp.v_set(s, ClosedSet{s.id(), base_closed[j]}).mask;
        const bool sub = (base_closed[i] & base_closed[j]) == base_closed[i];
        c.require(sub == ((vi & vj) == vi), "V does not preserve inclusion both ways", witness);
      }
  }
}

inline void battery_functions_decompose(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const RealFunction f = gen::sc_function(c.rng, s);
    const Json witness{{"space", space_to_json(s)}, {"function", function_to_json(s, f)}};
    SCFunction sc = sc_decompose(s, f);
    if (c.mutant("sc-decompose-identity")) sc = SCFunction{f, constant_function(s, Rational(0))};
    c.require(is_usc(s, sc.g), "positive part is not USC", witness);
    c.require(is_usc(s, sc.h), "negative part is not USC", witness);
    for (std::size_t x = 0; x < s.size(); ++x)
      c.require(sc.eval(x) == f.values[x], "decomposition does not recover the function", witness);
    if (is_usc(s, f))
      c.require(sc.h.values == std::vector<Rational>(s.size(), Rational(0)),
                "USC input should decompose as (f, 0)", witness);
    // Any function separating an indistinguishable pair must be rejected.
    for (std::size_t x = 0; x < s.size(); ++x) {
      const Mask cls = s.class_of(x);
      if (std::popcount(cls) < 2) continue;
      RealFunction bad = f;
      bad.values[x] += 1;
      bool threw = false;
      try {
        sc_decompose(s, bad);
      } catch (const ValidationError&) {
        threw = true;
      }
      c.require(threw, "non-SC function was not rejected", witness);
      break;
    }
  }
}

inline void battery_functions_char(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const RealFunction f = gen::usc_function(c.rng, s);
    const Json witness{{"space", space_to_json(s)}, {"function", function_to_json(s, f)}};
    const CharCombination combo = char_combination(s, f);
    for (std::size_t x = 0; x < s.size(); ++x)
      c.require(combo.eval(x) == f.values[x], "combination misses the function value", witness);
    c.require(!combo.terms.empty() && combo.terms.front().second.mask == s.all_mask(),
              "first term must be the whole space", witness);
    for (std::size_t i = 1; i < combo.terms.size(); ++i) {
      c.require(combo.terms[i].first > 0, "later coefficients must be positive", witness);
      c.require((combo.terms[i].second.mask & combo.terms[i - 1].second.mask) ==
                    combo.terms[i].second.mask,
                "level sets must descend", witness);
      c.require(s.is_closed_mask(combo.terms[i].second.mask), "level set is not closed", witness);
    }
  }
}

inline void battery_functions_eta(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const Completion comp = complete_space(s);
    const FiniteSpace& hat = comp.completed();
    const RealFunction f = gen::sc_function(c.rng, s);
    const SCFunction sc = sc_decompose(s, f);
    const SCFunction lifted = eta_transport(s, sc, comp);
    const Json witness{{"space", space_to_json(s)}, {"function", function_to_json(s, f)}};
    c.require(is_usc(hat, lifted.g) && is_usc(hat, lifted.h),
              "transported parts are not USC", witness);
    c.require(sup_norm(s, sc) == sup_norm(hat, lifted), "transport is not isometric", witness);
    for (std::size_t i = 0; i < hat.size(); ++i) {
      const IrreducibleClosed e = irreducible_from_mask(s, comp.base_set(i));
      c.require(lifted.eval(i) == generic_value(s, sc, e),
                "transported value differs from the generic value", witness);
    }
    const Measure mu = gen::measure(c.rng, s, 3, Rational(2));
    const Measure lifted_mu = j_embed(s, mu, comp);
    c.require(integrate(hat, lifted_mu, lifted) == integrate(s, mu, sc),
              "integration does not commute with the embedding", witness);
  }
}

inline void battery_measures_roundtrip(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const Measure mu = gen::measure(c.rng, s, 1 + c.rng.below(4), Rational(3));
    const Json witness{{"space", space_to_json(s)}, {"measure", measure_to_json(s, mu)}};
    const bool skip_correction = c.mutant("inversion-skip-correction");
    const auto v = [&](Mask f) { return measure_of_closed(s, mu, f); };
    Measure back;
    if (skip_correction) {
      std::map<Mask, Rational, CanonicalMaskLess> coef;
      for (const auto& e : s.irreducibles()) {
        Rational val = v(e.set);
        if (val != 0) coef.emplace(e.set, val);
      }
      back = Measure{s.id(), std::move(coef)};
    } else {
      back = from_closed_set_values(s, v);
    }
    c.require(back.coefficients == mu.coefficients, "inversion does not recover the measure",
              witness);
    // Squared cardinality is modular only when the closed sets form a
    // chain; with an incomparable irreducible pair it must be rejected.
    bool incomparable = false;
    const auto& irr = s.irreducibles();
    for (std::size_t i = 0; i < irr.size() && !incomparable; ++i)
      for (std::size_t j = i + 1; j < irr.size(); ++j)
        if ((irr[i].set & irr[j].set) != irr[i].set && (irr[i].set & irr[j].set) != irr[j].set) {
          incomparable = true;
          break;
        }
    if (incomparable) {
      bool threw = false;
      try {
        from_closed_set_values(
            s, [&](Mask f) { return Rational(std::popcount(f)) * Rational(std::popcount(f)); });
      } catch (const ValidationError&) {
        threw = true;
      }
      c.require(threw, "a non-modular valuation was accepted", witness);
    }
  }
}

inline void battery_measures_calculus(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const Measure mu = gen::measure(c.rng, s, 1 + c.rng.below(4), Rational(3));
    const Mask a = s.closure_mask(c.rng.next() & s.all_mask());
    const Mask b = s.closure_mask(c.rng.next() & s.all_mask());
    const Json witness{{"space", space_to_json(s)}, {"measure", measure_to_json(s, mu)}};
    c.require(measure_of_closed(s, mu, Mask(0)) == 0, "empty set must measure zero", witness);
    c.require(measure_of_closed(s, mu, s.all_mask()) == total_mass(mu),
              "whole space must measure the total mass", witness);
    c.require(measure_of_closed(s, mu, a | b) + measure_of_closed(s, mu, a & b) ==
                  measure_of_closed(s, mu, a) + measure_of_closed(s, mu, b),
              "closed-set values are not modular", witness);
    const Measure pos = gen::measure(c.rng, s, 2, Rational(1), true);
    c.require(is_positive(pos), "generator produced a non-positive measure", witness);
    if ((a & b) == a)
      c.require(measure_of_closed(s, pos, a) <= measure_of_closed(s, pos, b),
                "positive measures must be monotone", witness);
    // Arbitrary subsets: the atom counts exactly when the subset meets its
    // generic class.
    const Mask sub = c.rng.next() & s.all_mask();
    Rational expect(0);
    for (const auto& [mask, coef] : mu.coefficients) {
      const IrreducibleClosed e = irreducible_from_mask(s, mask);
      if ((sub & e.generics) != 0) expect += coef;
    }
    c.require(measure_of_set(s, mu, sub) == expect, "subset measure disagrees with atoms", witness);
  }
}

inline void battery_measures_jordan(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const Measure mu = gen::measure(c.rng, s, 1 + c.rng.below(5), Rational(4));
    const auto [plus, minus] = jordan_decompose(s, mu);
    const Json witness{{"space", space_to_json(s)}, {"measure", measure_to_json(s, mu)}};
    c.require(is_positive(plus) && is_positive(minus), "jordan parts must be positive", witness);
    const Measure back = measure_add(s, plus, measure_scale(minus, Rational(-1)));
    c.require(back.coefficients == mu.coefficients, "jordan parts do not reassemble", witness);
    c.require(total_variation(mu) == total_mass(plus) + total_mass(minus),
              "total variation must split across the parts", witness);
    for (const auto& [mask, coef] : plus.coefficients)
      c.require(minus.coefficients.find(mask) == minus.coefficients.end(),
                "jordan supports overlap", witness);
  }
}

inline void battery_measures_distance(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const Measure a = gen::measure(c.rng, s, 1 + c.rng.below(4), Rational(2));
    const Measure b = gen::measure(c.rng, s, 1 + c.rng.below(4), Rational(2));
    const Measure d = gen::measure(c.rng, s, 1 + c.rng.below(4), Rational(2));
    const Json witness{{"space", space_to_json(s)}};
    c.require(weak_distance(s, a, b) == weak_distance(s, b, a), "distance is not symmetric",
              witness);
    c.require(weak_distance(s, a, a) == 0, "self distance is nonzero", witness);
    c.require((weak_distance(s, a, b) == 0) == (a.coefficients == b.coefficients),
              "zero distance must pin equality", witness);
    c.require(weak_distance(s, a, d) <= weak_distance(s, a, b) + weak_distance(s, b, d),
              "triangle inequality fails", witness);
    for (const auto& e : s.irreducibles())
      c.require(rational_abs(measure_of_closed(s, a, e.set) - measure_of_closed(s, b, e.set)) <=
                    weak_distance(s, a, b),
                "distance misses an irreducible discrepancy", witness);
  }
}

inline void battery_measures_extractor(Ctx& c) {
  const std::size_t runs = std::max<std::size_t>(2, c.opts.cases / 50);
  const FiniteSpace fan = fixture_fan();
  for (c.case_index = 0; c.case_index < runs; ++c.case_index) {
    const std::size_t count = 50;
    // Oscillating family on the fan: the limit is pinned to one of the two.
    {
      const auto seq = gen::oscillating_sequence(dirac(fan, "p"), dirac(fan, "q"));
      ExtractionResult r = extract_convergent_subsequence(fan, seq, count, Rational(1));
      if (c.mutant("extractor-reverse"))
        std::reverse(r.distances.begin(), r.distances.end());
      const bool is_p = r.limit.coefficients == dirac(fan, "p").coefficients;
      const bool is_q = r.limit.coefficients == dirac(fan, "q").coefficients;
      c.require(is_p || is_q, "oscillating limit must be one of the two measures");
      for (std::size_t k = 0; k < r.indices.size(); ++k) {
        c.require(r.distances[k] == 0, "oscillating distances must vanish");
        if (k) c.require(r.indices[k] > r.indices[k - 1], "indices must increase");
      }
    }
    // Drifting family: limit + direction / (i + 1).
    {
      const Measure limit = gen::measure(c.rng, fan, 2, make_rational(1, 2), true);
      const Measure direction = gen::measure(c.rng, fan, 2, make_rational(1, 2));
      const auto seq = gen::drifting_sequence(fan, limit, direction);
      ExtractionResult r = extract_convergent_subsequence(fan, seq, count, Rational(1));
      if (c.mutant("extractor-reverse"))
        std::reverse(r.distances.begin(), r.distances.end());
      for (std::size_t k = 1; k < r.distances.size(); ++k) {
        c.require(r.distances[k] <= r.distances[k - 1], "distances must not increase");
        c.require(r.indices[k] > r.indices[k - 1], "indices must increase");
      }
      c.require(r.distances.back() <= make_rational(1, 1000),
                "drift distances must fall under one thousandth");
    }
    // Seeded adversarial palette mixture on a random space.
    {
      const FiniteSpace s = c.random_space(true, 6);
      const auto seq = gen::random_sequence(s, c.rng.next(), Rational(1));
      const ExtractionResult r = extract_convergent_subsequence(s, seq, count, Rational(1));
      for (std::size_t k = 1; k < r.distances.size(); ++k)
        c.require(r.distances[k] <= r.distances[k - 1], "distances must not increase");
      c.require(r.distances.back() <= make_rational(1, 1000),
                "palette distances must fall under one thousandth");
      c.require(total_variation(r.limit) <= Rational(1), "limit exceeds the TV bound");
    }
    // A sequence violating the TV bound must be refused.
    {
      bool threw = false;
      try {
        extract_convergent_subsequence(
            fan, [&](std::size_t) { return measure_scale(dirac(fan, "p"), Rational(3)); }, 4,
            Rational(1));
      } catch (const ValidationError&) {
        threw = true;
      }
      c.require(threw, "TV violations must be rejected");
    }
  }
}

inline void battery_dynamics_continuity(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const ContinuousMap f = gen::map(c.rng, s);
    const Json witness{{"space", space_to_json(s)}, {"map", map_to_json(s, f, "inline")}};
    // Preimages partition the space.
    Mask seen = 0;
    for (std::size_t x = 0; x < s.size(); ++x) {
      c.require((seen & f.preimage[x]) == 0, "preimages overlap", witness);
      seen |= f.preimage[x];
    }
    c.require(seen == s.all_mask(), "preimages do not cover", witness);
    c.require(f.surjective == [&] {
      for (std::size_t x = 0; x < s.size(); ++x)
        if (f.preimage[x] == 0) return false;
      return true;
    }(), "surjectivity flag is wrong", witness);
    // Construct a discontinuous assignment when the shape permits one.
    std::optional<std::pair<std::size_t, std::size_t>> strict;
    std::optional<std::pair<std::size_t, std::size_t>> incomparable;
    for (std::size_t x = 0; x < s.size() && (!strict || !incomparable); ++x)
      for (std::size_t y = 0; y < s.size(); ++y) {
        if (!strict && y != x && s.le(y, x) && !s.le(x, y)) strict = {{y, x}};
        if (!incomparable && !s.le(y, x) && !s.le(x, y)) incomparable = {{y, x}};
      }
    if (strict && incomparable) {
      std::vector<std::size_t> bad(s.size(), incomparable->first);
      bad[strict->first] = incomparable->second;
      bool threw = false;
      try {
        make_map(s, bad);
      } catch (const ValidationError&) {
        threw = true;
      }
      c.require(threw, "a discontinuous assignment was accepted", witness);
    }
  }
}

inline void battery_dynamics_pushforward(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const ContinuousMap f = gen::map(c.rng, s);
    const Measure mu = gen::measure(c.rng, s, 1 + c.rng.below(4), Rational(3));
    const Json witness{{"space", space_to_json(s)},
                       {"map", map_to_json(s, f, "inline")},
                       {"measure", measure_to_json(s, mu)}};
    Measure pushed = pushforward(s, f, mu);
    if (c.mutant("pushforward-first-member")) {
      Measure broken;
      broken.space_id = s.id();
      for (const auto& [mask, coef] : mu.coefficients) {
        const Mask target = s.down(f.to[std::size_t(std::countr_zero(mask))]);
        auto [it, ins] = broken.coefficients.emplace(target, coef);
        if (!ins) it->second += coef;
      }
      pushed = std::move(broken);
    }
    c.require(total_mass(pushed) == total_mass(mu), "pushforward must preserve mass", witness);
    const RealFunction g = gen::sc_function(c.rng, s);
    std::vector<Rational> pulled(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) pulled[x] = g.values[f.to[x]];
    c.require(integrate(s, pushed, g) == integrate(s, mu, make_function(s, std::move(pulled))),
              "pushforward is not adjoint to composition", witness);
    for (std::size_t x = 0; x < s.size(); ++x)
      c.require(pushforward(s, f, dirac(s, x)).coefficients == dirac(s, f.to[x]).coefficients,
                "dirac must push to the image dirac", witness);
  }
}

inline void battery_dynamics_ergodic(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    // The decomposition is defined on Zariski spaces only (and rejects the
    // rest), so the battery draws T0 instances.
    const FiniteSpace s = c.random_space(false);
    const ContinuousMap f = gen::map(c.rng, s);
    const Json witness{{"space", space_to_json(s)}, {"map", map_to_json(s, f, "inline")}};
    auto cycles = enumerate_cycles(s, f);
    if (c.mutant("ergodic-drop-cycle") && cycles.size() > 1) cycles.pop_back();
    std::vector<Measure> ergodic;
    for (const auto& cycle : cycles) ergodic.push_back(uniform_cycle_measure(s, cycle));
    if (!c.mutant("ergodic-drop-cycle")) {
      const auto direct = ergodic_measures(s, f);
      c.require(direct.size() == ergodic.size(), "ergodic list disagrees with cycles", witness);
    }
    // Independent periodicity oracle: iterate |X| steps.
    Mask periodic_oracle = 0;
    for (std::size_t x = 0; x < s.size(); ++x) {
      std::size_t y = x;
      for (std::size_t k = 0; k < s.size(); ++k) {
        y = f.to[y];
        if (y == x) {
          periodic_oracle |= Mask(1) << x;
          break;
        }
      }
    }
    Mask cycle_union = 0;
    for (const auto& cycle : cycles)
      for (const std::size_t x : cycle) cycle_union |= Mask(1) << x;
    c.require(cycle_union == periodic_oracle, "cycles disagree with the periodicity oracle",
              witness);
    for (const auto& mu : ergodic) {
      c.require(is_positive(mu) && total_mass(mu) == 1, "ergodic measure is not a probability",
                witness);
      c.require(is_invariant(s, f, mu), "ergodic measure is not invariant", witness);
    }
    for (std::size_t i = 0; i < ergodic.size(); ++i)
      for (std::size_t j = i + 1; j < ergodic.size(); ++j)
        for (const auto& [mask, coef] : ergodic[i].coefficients)
          c.require(ergodic[j].coefficients.find(mask) == ergodic[j].coefficients.end(),
                    "distinct ergodic measures share an atom", witness);
  }
}

inline void battery_dynamics_theorem_e(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const ContinuousMap f = gen::map(c.rng, s);
    const std::size_t x = c.rng.below(s.size());
    const Json witness{{"space", space_to_json(s)},
                       {"map", map_to_json(s, f, "inline")},
                       {"start", s.name(x)}};
    const std::size_t small_n = 1 + c.rng.below(40);
    const LimitMeasureReport small = theorem_e_limit(s, f, x, small_n);
    // Brute Cesaro average.
    Measure brute = zero_measure(s);
    std::size_t y = x;
    for (std::size_t i = 0; i < small_n; ++i) {
      brute = measure_add(s, brute, dirac(s, y));
      y = f.to[y];
    }
    brute = measure_scale(brute, make_rational(1, static_cast<long long>(small_n)));
    c.require(small.empirical.coefficients == brute.coefficients,
              "closed-form empirical measure disagrees with brute force", witness);
    c.require(small.distance <= small.bound, "distance exceeds the proven bound", witness);
    const LimitMeasureReport big = theorem_e_limit(s, f, x, 10000);
    c.require(big.distance <= big.bound, "large-horizon distance exceeds the bound", witness);
    c.require(is_invariant(s, f, big.limit), "limit measure is not invariant", witness);
  }
}

inline ReverseOrbitSpec reverse_orbit_through(const FiniteSpace& s, const ContinuousMap& f,
                                              std::size_t x) {
  const OrbitSummary orbit = forward_orbit(s, f, x);
  if (orbit.preperiod != 0)
    throw UndefinedResultError("point " + s.name(x) + " has no infinite reverse orbit");
  ReverseOrbitSpec ro;
  ro.prefix = {x};
  ro.cycle.assign(orbit.cycle.rbegin(), orbit.cycle.rend());
  return ro;
}

inline void battery_dynamics_theorem_f(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    gen::DynamicsInstance inst = gen::automorphism_instance(c.rng, c.opts.max_points);
    const FiniteSpace& s = inst.space;
    const ContinuousMap& f = inst.map;
    const std::size_t x = c.rng.below(s.size());
    const ReverseOrbitSpec ro = reverse_orbit_through(s, f, x);
    validate_reverse_orbit(s, f, ro);
    const Json witness{{"space", space_to_json(s)},
                       {"map", map_to_json(s, f, "inline")},
                       {"orbit", reverse_orbit_to_json(s, ro)}};
    const std::size_t small_n = 1 + c.rng.below(40);
    const LimitMeasureReport small = theorem_f_limit(s, f, ro, small_n);
    Measure brute = zero_measure(s);
    for (std::size_t i = 0; i < small_n; ++i) brute = measure_add(s, brute, dirac(s, ro.at(i)));
    brute = measure_scale(brute, make_rational(1, static_cast<long long>(small_n)));
    c.require(small.empirical.coefficients == brute.coefficients,
              "backward empirical measure disagrees with brute force", witness);
    c.require(small.distance <= small.bound, "backward distance exceeds the bound", witness);
    const LimitMeasureReport big = theorem_f_limit(s, f, ro, 10000);
    c.require(big.distance <= big.bound, "large-horizon backward distance exceeds the bound",
              witness);
    const ClosedSet alpha = alpha_limit(s, f, ro);
    Mask expect = 0;
    for (const std::size_t y : ro.cycle) expect |= s.down(y);
    c.require(alpha.mask == expect, "alpha limit is not the cycle closure", witness);
    // Corrupting one cycle entry must be rejected: the map is injective, so
    // no other point can satisfy that entry's forward constraint.
    if (s.size() >= 2) {
      ReverseOrbitSpec bad = ro;
      const std::size_t slot = c.rng.below(bad.cycle.size());
      bad.cycle[slot] = (bad.cycle[slot] + 1 + c.rng.below(s.size() - 1)) % s.size();
      bool threw = false;
      try {
        validate_reverse_orbit(s, f, bad);
      } catch (const ValidationError&) {
        threw = true;
      }
      c.require(threw, "a corrupted reverse orbit was accepted", witness);
    }
    // Non-surjective maps must refuse alpha limits.
    const FiniteSpace fan = fixture_fan();
    const ContinuousMap g = fixture_g(fan);
    ReverseOrbitSpec still;
    still.prefix = {fan.index("p")};
    still.cycle = {fan.index("p")};
    bool threw = false;
    try {
      alpha_limit(fan, g, still);
    } catch (const UndefinedResultError&) {
      threw = true;
    }
    c.require(threw, "alpha limit must refuse non-surjective maps", witness);
  }
}

inline void battery_dinh_forward(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space(false);
    const ContinuousMap f = gen::map(c.rng, s);
    const RealFunction tau = gen::usc_function(c.rng, s);
    const std::size_t x = c.rng.below(s.size());
    const Json witness{{"space", space_to_json(s)},
                       {"map", map_to_json(s, f, "inline")},
                       {"tau", function_to_json(s, tau)},
                       {"point", s.name(x)}};
    const std::size_t small_n = c.rng.below(30);
    Rational brute(0);
    std::size_t y = x;
    for (std::size_t i = 0; i < small_n; ++i) {
      brute += tau.values[y];
      y = f.to[y];
    }
    c.require(tau_n(s, f, tau, x, small_n) == brute,
              "closed-form forward sum disagrees with brute force", witness);
    const OrbitSummary orbit = forward_orbit(s, f, x);
    Rational mean(0);
    for (const std::size_t p : orbit.cycle) mean += tau.values[p];
    mean /= static_cast<long long>(orbit.cycle.size());
    c.require(tau_plus(s, f, tau, x) == mean, "forward rate is not the cycle mean", witness);
    const std::size_t n = 1000;
    const Rational gap = rational_abs(tau_n(s, f, tau, x, n) / static_cast<long long>(n) -
                                      tau_plus(s, f, tau, x));
    const Rational bound = 2 * sup_norm(s, tau) *
                           Rational(static_cast<long long>(orbit.preperiod + orbit.period)) /
                           static_cast<long long>(n);
    c.require(gap <= bound, "forward averages violate the rate bound", witness);
  }
}

inline void battery_dinh_recursion(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = gen::space(c.rng, 1 + c.rng.below(8), false);
    const ContinuousMap f = gen::map(c.rng, s);
    const RealFunction tau = gen::usc_function(c.rng, s);
    const std::size_t x = c.rng.below(s.size());
    const std::size_t n = 1 + c.rng.below(12);
    const Json witness{{"space", space_to_json(s)},
                       {"map", map_to_json(s, f, "inline")},
                       {"tau", function_to_json(s, tau)},
                       {"point", s.name(x)},
                       {"n", n}};
    std::optional<Rational> dp = tau_minus_n(s, f, tau, x, n);
    if (c.mutant("tau-dp-short") && n > 1) dp = tau_minus_n(s, f, tau, x, n - 1);
    // Exhaustive oracle: sources y with f^n(y) = x, maximizing the path sum.
    std::optional<Rational> oracle;
    for (std::size_t y0 = 0; y0 < s.size(); ++y0) {
      Rational sum(0);
      std::size_t y = y0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += tau.values[y];
        y = f.to[y];
      }
      if (y != x) continue;
      if (!oracle || sum > *oracle) oracle = sum;
    }
    c.require(dp == oracle, "max-plus recursion disagrees with exhaustive search", witness);
  }
}

inline void battery_dinh_limits(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    gen::DynamicsInstance inst = gen::automorphism_instance(c.rng, 8);
    const FiniteSpace& s = inst.space;
    const ContinuousMap& f = inst.map;
    if (!is_zariski(s)) continue;
    const RealFunction tau = gen::usc_function(c.rng, s);
    const Json witness{{"space", space_to_json(s)},
                       {"map", map_to_json(s, f, "inline")},
                       {"tau", function_to_json(s, tau)}};
    c.require(f.surjective, "automorphism instance must be surjective", witness);
    std::vector<Rational> minus_values(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
      const auto minus = tau_minus(s, f, tau, x);
      c.require(minus.has_value(), "surjective backward rate must be total", witness);
      minus_values[x] = *minus;
      c.require(*minus == tau_plus(s, f, tau, x),
                "backward and forward rates must agree under surjectivity", witness);
      const auto formula = tau_minus_closure_formula(s, f, tau, x);
      c.require(formula && *formula == *minus,
                "closure formula disagrees with the backward rate", witness);
      const std::size_t n = 1000;
      const auto dp = tau_minus_n(s, f, tau, x, n);
      c.require(dp.has_value(), "backward sums must exist under surjectivity", witness);
      const Rational gap = rational_abs(*dp / static_cast<long long>(n) - *minus);
      const Rational bound = 4 * sup_norm(s, tau) * Rational(static_cast<long long>(s.size())) /
                             static_cast<long long>(n);
      c.require(gap <= bound, "backward averages violate the rate bound", witness);
    }
    c.require(is_usc(s, make_function(s, std::move(minus_values))),
              "backward rate must be USC", witness);
  }
}

inline void battery_dinh_divergence(Ctx& c) {
  for (c.case_index = 0; c.case_index < 1; ++c.case_index) {
    const FiniteSpace fan = fixture_fan();
    const ContinuousMap g = fixture_g(fan);
    const RealFunction tau = fixture_tau1(fan);
    const std::size_t p = fan.index("p"), q = fan.index("q"), eta = fan.index("eta");
    const auto minus_p = tau_minus(fan, g, tau, p);
    c.require(minus_p && *minus_p == 1, "fixed point must keep its own weight");
    c.require(!tau_minus(fan, g, tau, q).has_value(),
              "point outside every backward cycle must be bottom");
    const auto formula_q = tau_minus_closure_formula(fan, g, tau, q);
    c.require(formula_q && *formula_q == 0,
              "closure formula must still produce a value where the rate is bottom");
    // eta's only preimage is eta itself, so backward it sees just its own
    // fixed point, not the heavier cycle at p.
    const auto minus_eta = tau_minus(fan, g, tau, eta);
    c.require(minus_eta && *minus_eta == 0, "generic fixed point keeps its own backward rate");
    // Karp-style oracle on the backward-reachable part.
    for (std::size_t x = 0; x < fan.size(); ++x) {
      Mask reached = Mask(1) << x;
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t y = 0; y < fan.size(); ++y)
          if (((reached >> y) & 1u) && (g.preimage[y] & ~reached)) {
            reached |= g.preimage[y];
            grew = true;
          }
      }
      std::optional<Rational> oracle;
      for (std::size_t y = 0; y < fan.size(); ++y) {
        if (!((reached >> y) & 1u)) continue;
        std::size_t z = y;
        for (std::size_t k = 1; k <= fan.size(); ++k) {
          z = g.to[z];
          if (z == y) {
            Rational mean(0);
            std::size_t w = y;
            for (std::size_t i = 0; i < k; ++i) {
              mean += tau.values[w];
              w = g.to[w];
            }
            mean /= static_cast<long long>(k);
            if (!oracle || mean > *oracle) oracle = mean;
            break;
          }
        }
      }
      c.require(tau_minus(fan, g, tau, x) == oracle,
                "backward rate disagrees with the cycle-mean oracle");
    }
    // The best reverse orbit of p is the constant orbit.
    const ReverseOrbitSpec ro = best_reverse_orbit(fan, g, tau, p);
    c.require(ro.prefix == std::vector<std::size_t>{p} && ro.cycle == std::vector<std::size_t>{p},
              "best reverse orbit of a fixed point must be constant");
    bool threw = false;
    try {
      best_reverse_orbit(fan, g, tau, q);
    } catch (const UndefinedResultError&) {
      threw = true;
    }
    c.require(threw, "points without backward history must refuse a witness orbit");
    // Under sigma the witness cycle of p walks the two-cycle against the flow.
    const ContinuousMap sigma = fixture_sigma(fan);
    const ReverseOrbitSpec rp = best_reverse_orbit(fan, sigma, tau, p);
    c.require(rp.prefix == std::vector<std::size_t>{p} &&
                  rp.cycle == std::vector<std::size_t>({q, p}),
              "witness orbit under the swap must alternate");
    c.require(tau_plus(fan, sigma, tau, p) == 2, "swap cycle mean must average the weights");
  }
}

inline void battery_io_roundtrip(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const FiniteSpace s = c.random_space();
    const FiniteSpace back = parse_space_json(space_to_json(s));
    c.require(back.size() == s.size(), "space round-trip changes the point count");
    for (std::size_t x = 0; x < s.size(); ++x) {
      c.require(back.name(x) == s.name(x), "space round-trip reorders points");
      c.require(back.down(x) == s.down(x), "space round-trip changes the preorder",
                Json{{"space", space_to_json(s)}});
    }
    const ContinuousMap f = gen::map(c.rng, s);
    const LoadedMap lm = parse_map_json(parse_space_json(space_to_json(s)),
                                        map_to_json(s, f, "inline"));
    c.require(lm.map.to == f.to, "map round-trip changes assignments");
    const Measure mu = gen::measure(c.rng, s, 1 + c.rng.below(4), Rational(2));
    const Measure mu2 = parse_measure_json(s, measure_to_json(s, mu));
    c.require(mu2.coefficients == mu.coefficients, "measure round-trip changes coefficients");
    const RealFunction fn = gen::sc_function(c.rng, s);
    const RealFunction fn2 = parse_function_json(s, function_to_json(s, fn));
    c.require(fn2.values == fn.values, "function round-trip changes values");
    if (is_zariski(s)) {
      const std::size_t x = c.rng.below(s.size());
      c.require(parse_atom_id(s, s.name(x), "test") == s.down(x),
                "bare atom ids must mean the point closure");
    }
    bool threw = false;
    try {
      parse_json_text("{ \"points\": [,] }", "buffer");
    } catch (const ValidationError& e) {
      threw = std::string(e.what()).find("buffer:1:") != std::string::npos;
    }
    c.require(threw, "parse errors must carry a line anchor");
  }
}

inline void battery_io_determinism(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const std::uint64_t seed = c.rng.next();
    SplitMix64 r1(seed), r2(seed);
    const FiniteSpace s1 = gen::space(r1, 1 + (seed % c.opts.max_points), true);
    const FiniteSpace s2 = gen::space(r2, 1 + (seed % c.opts.max_points), true);
    c.require(dump_json(space_to_json(s1)) == dump_json(space_to_json(s2)),
              "equal seeds must generate identical spaces");
    const ContinuousMap f1 = gen::map(r1, s1);
    const ContinuousMap f2 = gen::map(r2, s2);
    c.require(f1.to == f2.to, "equal seeds must generate identical maps");
    const Measure m1 = gen::measure(r1, s1, 3, Rational(2));
    const Measure m2 = gen::measure(r2, s2, 3, Rational(2));
    c.require(dump_json(measure_to_json(s1, m1)) == dump_json(measure_to_json(s2, m2)),
              "equal seeds must generate identical measures");
    c.require(export_dot(s1) == export_dot(s2), "DOT export must be deterministic");
  }
}

inline void battery_cofinite(Ctx& c) {
  for (c.case_index = 0; c.case_index < c.opts.cases; ++c.case_index) {
    const CofiniteSpace unc = cofinite_space_uncountable();
    const CofiniteSpace ctble = cofinite_space_countable();
    std::vector<long long> elems;
    const std::size_t n = c.rng.below(6);
    for (std::size_t i = 0; i < n; ++i) elems.push_back(c.rng.range(-20, 20));
    const SymbolicSet a = finite_set(elems);
    const SymbolicSet ac = symbolic_complement(unc, a);
    c.require(ac.kind == SymbolicKind::CofiniteSet && ac.elements == a.elements,
              "complement of finite must be cofinite with the same list");
    const SymbolicSet back = symbolic_complement(unc, ac);
    c.require(back.kind == a.kind && back.elements == a.elements,
              "complement must be an involution");
    c.require(delta_Y(unc, a) + delta_Y(unc, ac) == 1,
              "the generic mass must split one across a complement pair");
    std::vector<long long> other;
    for (std::size_t i = 0; i < c.rng.below(6); ++i) other.push_back(c.rng.range(-20, 20));
    const SymbolicSet b = finite_set(other);
    const SymbolicSet u = symbolic_union(unc, a, b);
    c.require(u.kind == SymbolicKind::FiniteSet, "finite unions must stay finite");
    const SymbolicSet viaDM = symbolic_complement(
        unc, symbolic_intersection(unc, symbolic_complement(unc, a), symbolic_complement(unc, b)));
    c.require(viaDM.kind == u.kind && viaDM.elements == u.elements,
              "De Morgan must hold on concrete sets");
    c.require(delta_Y(unc, u) == 0 && delta_Y(unc, symbolic_complement(unc, u)) == 1,
              "finite sets carry no generic mass");
    c.require(classify_against_whole_space(unc, a) == IntersectionType::Type2,
              "finite sets must classify as type 2");
    c.require(classify_against_whole_space(unc, ac) == IntersectionType::Type1,
              "cofinite sets must classify as type 1");
    c.require(classify_against_whole_space(unc, abstract_set(SymbolicKind::AbstractNeither)) ==
                  IntersectionType::Neither,
              "undetermined descriptors must classify as neither");
    bool not_borel = false;
    try {
      delta_Y(unc, abstract_set(SymbolicKind::AbstractNeither));
    } catch (const NotBorelError&) {
      not_borel = true;
    }
    c.require(not_borel, "the generic mass must refuse non-borel descriptors");
    bool undetermined = false;
    try {
      symbolic_union(unc, abstract_set(SymbolicKind::AbstractNeither),
                     abstract_set(SymbolicKind::AbstractNeither));
    } catch (const ValidationError&) {
      undetermined = true;
    }
    c.require(undetermined, "undetermined unions must be refused");
    c.require(is_complete(unc) && !is_complete(ctble) && is_complete(cofinite_space_finite(4)),
              "completeness must follow the carrier cardinality");
    const auto sig = sigma_irreducible_closeds(unc);
    c.require(sig.singletons && sig.whole_space,
              "infinite carriers keep singletons and the whole space");
    c.require(!sigma_irreducible_closeds(cofinite_space_finite(3)).whole_space,
              "finite carriers drop the whole space");
    const LambdaGapWitness w = lambda_gap_witness(unc);
    c.require(w.phi_of_one == 1 && w.phi_of_point_char == 0 && w.recovered_total_mass == 0 &&
                  w.gap == 1 && w.contradiction,
              "the representation gap certificate is wrong");
    const ShiftDynamicsReport sh = shift_dynamics_report(cofinite_space_integers());
    c.require(sh.continuous && sh.surjective && sh.injective && sh.periodic_point_count == 0 &&
                  sh.base_ergodic_count == 0 && sh.completion_ergodic_count == 1,
              "the shift report is wrong");
  }
}

}  // namespace verify_detail

inline const std::vector<std::pair<std::string, void (*)(verify_detail::Ctx&)>>&
verification_batteries() {
  using verify_detail::Ctx;
  static const std::vector<std::pair<std::string, void (*)(Ctx&)>> table = {
      {"rational/simplest-interval", &verify_detail::battery_rational_simplest},
      {"topology/closure-operator", &verify_detail::battery_topology_closure},
      {"topology/components", &verify_detail::battery_topology_components},
      {"topology/completion", &verify_detail::battery_topology_completion},
      {"functions/sc-decompose", &verify_detail::battery_functions_decompose},
      {"functions/char-combination", &verify_detail::battery_functions_char},
      {"functions/eta-transport", &verify_detail::battery_functions_eta},
      {"measures/normal-form-roundtrip", &verify_detail::battery_measures_roundtrip},
      {"measures/closed-set-calculus", &verify_detail::battery_measures_calculus},
      {"measures/jordan", &verify_detail::battery_measures_jordan},
      {"measures/weak-distance", &verify_detail::battery_measures_distance},
      {"measures/extractor", &verify_detail::battery_measures_extractor},
      {"dynamics/continuity", &verify_detail::battery_dynamics_continuity},
      {"dynamics/pushforward", &verify_detail::battery_dynamics_pushforward},
      {"dynamics/ergodic", &verify_detail::battery_dynamics_ergodic},
      {"dynamics/theorem-e", &verify_detail::battery_dynamics_theorem_e},
      {"dynamics/theorem-f", &verify_detail::battery_dynamics_theorem_f},
      {"dinh/forward", &verify_detail::battery_dinh_forward},
      {"dinh/recursion", &verify_detail::battery_dinh_recursion},
      {"dinh/limits", &verify_detail::battery_dinh_limits},
      {"dinh/divergence", &verify_detail::battery_dinh_divergence},
      {"io/roundtrip", &verify_detail::battery_io_roundtrip},
      {"io/determinism", &verify_detail::battery_io_determinism},
      {"cofinite/descriptors", &verify_detail::battery_cofinite},
  };
  return table;
}

inline std::vector<std::string> verification_mutants() {
  return {"sc-decompose-identity", "inversion-skip-correction", "extractor-reverse",
          "pushforward-first-member", "ergodic-drop-cycle", "tau-dp-short"};
}

inline VerificationReport run_verification(const VerifyOptions& opts) {
  if (!opts.mutant.empty()) {
    const auto known = verification_mutants();
    if (std::find(known.begin(), known.end(), opts.mutant) == known.end())
      throw ValidationError("unknown mutant \"" + opts.mutant + "\"");
  }
  VerificationReport report;
  for (const auto& [name, fn] : verification_batteries()) {
    if (!opts.only.empty() && name.rfind(opts.only, 0) != 0) continue;
    PropertyOutcome outcome;
    outcome.name = name;
    verify_detail::Ctx ctx{opts, SplitMix64(opts.seed ^ verify_detail::name_hash(name))};
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(ctx);
      outcome.cases_run = ctx.case_index;
    } catch (const verify_detail::PropertyFailure& f) {
      outcome.passed = false;
      outcome.cases_run = ctx.case_index;
      outcome.detail = f.detail;
      if (!opts.witness_dir.empty()) {
        Json w = f.witness;
        w["property"] = name;
        w["seed"] = opts.seed;
        w["detail"] = f.detail;
        std::string file = name;
        for (char& ch : file)
          if (ch == '/') ch = '-';
        const auto path = std::filesystem::path(opts.witness_dir) / ("witness-" + file + ".json");
        write_text_file(path.string(), dump_json(w));
        outcome.witness_path = path.string();
      }
    } catch (const std::exception& e) {
      outcome.passed = false;
      outcome.cases_run = ctx.case_index;
      outcome.detail = std::string("unexpected error: ") + e.what();
    }
    outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.properties.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace noeth
