#pragma once

// Seeded deterministic generators for spaces, maps, functions, measures and
// measure sequences. The RNG is a fixed SplitMix64 so streams are identical
// across platforms and standard library versions.

#include <noeth/dynamics.hpp>
#include <noeth/function.hpp>
#include <noeth/measure.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace noeth {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Uniform in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

namespace gen {

/// Random preorder on n points: a random partial order on indices (edges
/// only from lower to higher index, so acyclic by construction), optionally
/// glued into equivalence classes to exercise non-Zariski behaviour.
inline FiniteSpace space(SplitMix64& rng, std::size_t n_points, bool allow_classes = true) {
  if (n_points == 0 || n_points > FiniteSpace::kMaxPoints)
    throw ValidationError("generator: point count out of range");
  std::vector<std::string> names;
  names.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n_points; ++i)
    for (std::size_t j = i + 1; j < n_points; ++j)
      if (rng.chance(1, 3)) pairs.emplace_back(names[i], names[j]);
  if (allow_classes && n_points >= 2) {
    const std::size_t glues = rng.below(1 + n_points / 4);
    for (std::size_t g = 0; g < glues; ++g) {
      const std::size_t i = rng.below(n_points);
      std::size_t j = rng.below(n_points);
      if (i == j) j = (j + 1) % n_points;
      pairs.emplace_back(names[i], names[j]);
      pairs.emplace_back(names[j], names[i]);
    }
  }
  return build_space(names, pairs);
}

/// Random continuous self-map: rejection sampling over raw assignments,
/// falling back to a constant map (always continuous) and finally identity.
inline ContinuousMap map(SplitMix64& rng, const FiniteSpace& s) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::size_t> to(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) to[x] = rng.below(s.size());
    try {
      return make_map(s, std::move(to));
    } catch (const ValidationError&) {
    }
  }
  if (s.size() > 0 && rng.chance(1, 2))
    return make_map(s, std::vector<std::size_t>(s.size(), rng.below(s.size())));
  return identity_map(s);
}

/// Random measure with at most `atoms` atoms and total variation at most
/// `tv_bound` (hit exactly when any atom survives).
inline Measure measure(SplitMix64& rng, const FiniteSpace& s, std::size_t atoms,
                       const Rational& tv_bound, bool positive = false) {
  const auto& irr = s.irreducibles();
  std::map<Mask, Rational, CanonicalMaskLess> coef;
  if (irr.empty() || atoms == 0 || tv_bound == 0) return make_measure(s, std::move(coef));
  std::vector<long long> weights;
  std::vector<Mask> masks;
  Integer total = 0;
  for (std::size_t k = 0; k < atoms; ++k) {
    const Mask m = irr[rng.below(irr.size())].set;
    if (coef.count(m)) continue;
    long long w = rng.range(1, 16);
    if (!positive && rng.chance(1, 2)) w = -w;
    coef.emplace(m, Rational(0));
    masks.push_back(m);
    weights.push_back(w);
    total += w < 0 ? -w : w;
  }
  for (std::size_t i = 0; i < masks.size(); ++i)
    coef[masks[i]] = tv_bound * Rational(weights[i]) / Rational(total);
  return make_measure(s, std::move(coef));
}

/// Random function constant on specialization classes (hence SC).
inline RealFunction sc_function(SplitMix64& rng, const FiniteSpace& s) {
  std::vector<Rational> values(s.size());
  std::vector<bool> assigned(s.size(), false);
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (assigned[x]) continue;
    const Rational v = make_rational(rng.range(-8, 8), rng.range(1, 4));
    for (Mask rest = s.class_of(x); rest;) {
      const int y = std::countr_zero(rest);
      rest &= rest - 1;
      values[y] = v;
      assigned[y] = true;
    }
  }
  return make_function(s, std::move(values));
}

/// Random USC function: raw class-constant values repaired upward, each
/// point taking the max over its generizations.
inline RealFunction usc_function(SplitMix64& rng, const FiniteSpace& s) {
  const RealFunction raw = sc_function(rng, s);
  std::vector<Rational> values(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    Rational best = raw.values[x];
    for (Mask rest = s.up(x); rest;) {
      const int g = std::countr_zero(rest);
      rest &= rest - 1;
      best = std::max(best, raw.values[g]);
    }
    values[x] = best;
  }
  return make_function(s, std::move(values));
}

struct DynamicsInstance {
  FiniteSpace space;
  ContinuousMap map;
};

/// Automorphism instance: disjoint groups, each a random poset block copied
/// k times with the map rotating the copies. Every point is periodic and
/// the map is a homeomorphism.
inline DynamicsInstance automorphism_instance(SplitMix64& rng, std::size_t max_points = 12) {
  const std::size_t groups = 1 + rng.below(2);
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::pair<std::string, std::string>> assignments;
  std::size_t used = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t budget = max_points - used;
    if (budget < 1) break;
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, budget));
    const std::size_t m = 1 + rng.below(std::max<std::size_t>(1, budget / k));
    used += k * m;
    // One random order on the block, replicated across copies.
    std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (rng.chance(1, 3)) below[i][j] = true;
    const auto point = [&](std::size_t copy, std::size_t t) {
      return "g" + std::to_string(g) + "c" + std::to_string(copy) + "t" + std::to_string(t);
    };
    for (std::size_t copy = 0; copy < k; ++copy)
      for (std::size_t t = 0; t < m; ++t) {
        names.push_back(point(copy, t));
        assignments.emplace_back(point(copy, t), point((copy + 1) % k, t));
        for (std::size_t u = 0; u < m; ++u)
          if (u != t && below[t][u]) pairs.emplace_back(point(copy, t), point(copy, u));
      }
  }
  FiniteSpace s = build_space(names, pairs);
  std::map<std::string, std::string> a(assignments.begin(), assignments.end());
  ContinuousMap f = make_map(s, a);
  return DynamicsInstance{std::move(s), std::move(f)};
}

/// Measure sequence that oscillates between two fixed measures.
inline std::function<Measure(std::size_t)> oscillating_sequence(Measure even, Measure odd) {
  return [even = std::move(even), odd = std::move(odd)](std::size_t i) {
    return i % 2 == 0 ? even : odd;
  };
}

/// Measure sequence drifting toward `limit` at rate 1/(i+1) along
/// `direction`; the early terms sit far away but the tail converges.
inline std::function<Measure(std::size_t)> drifting_sequence(const FiniteSpace& s, Measure limit,
                                                             Measure direction) {
  // The closure may outlive the caller's space, so it owns a copy.
  return [s, limit = std::move(limit), direction = std::move(direction)](std::size_t i) {
    const Rational t = make_rational(1, static_cast<long long>(i + 1));
    return measure_add(s, limit, measure_scale(direction, t));
  };
}

/// Seeded adversarial sequence under a shared TV bound: a small palette of
/// fixed measures visited in random order, salted with fresh random noise
/// terms. Convergent subsequences exist (onto palette entries) but no
/// contiguous stretch converges. Index access is order-independent.
inline std::function<Measure(std::size_t)> random_sequence(const FiniteSpace& s,
                                                           std::uint64_t seed,
                                                           const Rational& tv_bound) {
  SplitMix64 setup(seed);
  auto palette = std::make_shared<std::vector<Measure>>();
  for (int k = 0; k < 4; ++k) {
    const std::size_t atoms = 1 + setup.below(std::max<std::size_t>(1, s.irreducibles().size()));
    const Rational scale = make_rational(setup.range(1, 16), 16);
    palette->push_back(measure(setup, s, atoms, tv_bound * scale));
  }
  // The closure may outlive the caller's space, so it owns a copy.
  return [s, seed, tv_bound, palette](std::size_t i) {
    SplitMix64 sub(seed ^ (0xa0761d6478bd642full * (i + 1)));
    if (sub.chance(1, 8)) {
      const std::size_t atoms = 1 + sub.below(std::max<std::size_t>(1, s.irreducibles().size()));
      const Rational scale = make_rational(sub.range(1, 16), 16);
      return measure(sub, s, atoms, tv_bound * scale);
    }
    return (*palette)[sub.below(palette->size())];
  };
}

}  // namespace gen
}  // namespace noeth
