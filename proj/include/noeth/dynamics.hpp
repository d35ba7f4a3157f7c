#pragma once

// Dynamics of continuous self-maps on finite spaces: orbits, pushforward,
// ergodic (cycle) measures, and the exact Cesaro limit theorems with their
// effective error bounds.

#include <noeth/measure.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace noeth {

struct ContinuousMap {
  std::uint64_t space_id = 0;
  std::vector<std::size_t> to;            // image point per point
  std::vector<Mask> preimage;             // preimage mask per point
  bool surjective = false;

  std::size_t operator()(std::size_t x) const { return to[x]; }
};

inline ContinuousMap make_map(const FiniteSpace& s, std::vector<std::size_t> to) {
  if (to.size() != s.size()) throw ValidationError("map must assign an image to every point");
  for (const std::size_t img : to)
    if (img >= s.size()) throw ValidationError("map image out of range");
  for (std::size_t x = 0; x < s.size(); ++x)
    for (Mask rest = s.down(x); rest;) {
      const int y = std::countr_zero(rest);
      rest &= rest - 1;
      if (!s.le(to[y], to[x]))
        throw ValidationError("map is not continuous: " + s.name(y) + " lies in closure{" +
                              s.name(x) + "} but " + s.name(to[y]) +
                              " does not lie in closure{" + s.name(to[x]) + "}");
    }
  ContinuousMap f;
  f.space_id = s.id();
  f.preimage.assign(s.size(), 0);
  for (std::size_t x = 0; x < s.size(); ++x) f.preimage[to[x]] |= Mask(1) << x;
  f.surjective = true;
  for (std::size_t x = 0; x < s.size(); ++x)
    if (f.preimage[x] == 0) f.surjective = false;
  f.to = std::move(to);
  return f;
}

inline ContinuousMap make_map(const FiniteSpace& s, const std::map<std::string, std::string>& to) {
  std::vector<std::size_t> v(s.size(), 0);
  std::vector<bool> seen(s.size(), false);
  for (const auto& [from, img] : to) {
    const std::size_t x = s.index(from);
    v[x] = s.index(img);
    seen[x] = true;
  }
  for (std::size_t x = 0; x < s.size(); ++x)
    if (!seen[x]) throw ValidationError("map does not assign an image to " + s.name(x));
  return make_map(s, std::move(v));
}

inline ContinuousMap identity_map(const FiniteSpace& s) {
  std::vector<std::size_t> to(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) to[x] = x;
  return make_map(s, std::move(to));
}

inline ContinuousMap compose(const FiniteSpace& s, const ContinuousMap& f,
                             const ContinuousMap& g) {
  s.check_owns(f.space_id, "map");
  s.check_owns(g.space_id, "map");
  std::vector<std::size_t> to(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) to[x] = f.to[g.to[x]];
  return make_map(s, std::move(to));
}

/// Atom transfer: the atom on closure{x} moves to the atom on closure{f(x)}.
inline Measure pushforward(const FiniteSpace& s, const ContinuousMap& f, const Measure& mu) {
  s.check_owns(f.space_id, "map");
  s.check_owns(mu.space_id, "measure");
  Measure out;
  out.space_id = s.id();
  for (const auto& [mask, c] : mu.coefficients) {
    const IrreducibleClosed e = irreducible_from_mask(s, mask);
    const std::size_t gen = std::size_t(std::countr_zero(e.generics));
    const Mask image = s.down(f.to[gen]);
    auto [it, inserted] = out.coefficients.emplace(image, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.coefficients.erase(it);
    }
  }
  return out;
}

inline bool is_invariant(const FiniteSpace& s, const ContinuousMap& f, const Measure& mu) {
  const Measure pushed = pushforward(s, f, mu);
  return pushed.coefficients == mu.coefficients;
}

/// The functor action of sobrification on maps: completion point E goes to
/// the completion point of closure f(E).
inline ContinuousMap induce_on_completion(const FiniteSpace& base, const ContinuousMap& f,
                                          const Completion& c) {
  base.check_owns(f.space_id, "map");
  base.check_owns(c.base_id(), "completion");
  const FiniteSpace& hat = c.completed();
  std::vector<std::size_t> to(hat.size());
  for (std::size_t i = 0; i < hat.size(); ++i) {
    const IrreducibleClosed e = irreducible_from_mask(base, c.base_set(i));
    const std::size_t gen = std::size_t(std::countr_zero(e.generics));
    to[i] = c.point_for(base.down(f.to[gen]));
  }
  return make_map(hat, std::move(to));
}

/// Cycles of the functional graph, each rotated to start at its smallest
/// point index, listed in order of that index. Every point falls into
/// exactly one cycle's basin.
inline std::vector<std::vector<std::size_t>> enumerate_cycles(const FiniteSpace& s,
                                                              const ContinuousMap& f) {
  s.check_owns(f.space_id, "map");
  std::vector<int> state(s.size(), 0);  // 0 unseen, 1 in progress, 2 done
  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t start = 0; start < s.size(); ++start) {
    if (state[start] != 0) continue;
    std::vector<std::size_t> path;
    std::size_t x = start;
    while (state[x] == 0) {
      state[x] = 1;
      path.push_back(x);
      x = f.to[x];
    }
    if (state[x] == 1) {
      const auto it = std::find(path.begin(), path.end(), x);
      std::vector<std::size_t> cycle(it, path.end());
      const auto min_it = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), min_it, cycle.end());
      cycles.push_back(std::move(cycle));
    }
    for (const std::size_t p : path) state[p] = 2;
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return cycles;
}

inline Measure uniform_cycle_measure(const FiniteSpace& s, const std::vector<std::size_t>& cycle) {
  Measure mu = zero_measure(s);
  const Rational w = make_rational(1, static_cast<long long>(cycle.size()));
  for (const std::size_t x : cycle) mu = measure_add(s, mu, measure_scale(dirac(s, x), w));
  return mu;
}

/// The ergodic probability measures of (X, f): exactly the uniform measures
/// on the cycles, one per cycle.
inline std::vector<Measure> ergodic_measures(const FiniteSpace& s, const ContinuousMap& f) {
  // Without unique generic points distinct cycles can induce the same
  // measure, so the decomposition is only well posed on Zariski spaces.
  if (!is_zariski(s))
    throw ValidationError("ergodic decomposition needs a Zariski space");
  std::vector<Measure> out;
  for (const auto& cycle : enumerate_cycles(s, f)) out.push_back(uniform_cycle_measure(s, cycle));
  return out;
}

struct OrbitSummary {
  std::size_t start = 0;
  std::vector<std::size_t> points;  // f^0(x) .. f^{N+r-1}(x), each distinct
  std::size_t preperiod = 0;        // N: steps before entering the cycle
  std::size_t period = 0;           // r: cycle length
  std::vector<std::size_t> cycle;   // f^N(x) .. f^{N+r-1}(x)
};

inline OrbitSummary forward_orbit(const FiniteSpace& s, const ContinuousMap& f, std::size_t x) {
  s.check_owns(f.space_id, "map");
  if (x >= s.size()) throw ValidationError("orbit start out of range");
  OrbitSummary out;
  out.start = x;
  std::vector<std::optional<std::size_t>> seen_at(s.size());
  std::size_t cur = x;
  while (!seen_at[cur]) {
    seen_at[cur] = out.points.size();
    out.points.push_back(cur);
    cur = f.to[cur];
  }
  out.preperiod = *seen_at[cur];
  out.period = out.points.size() - out.preperiod;
  out.cycle.assign(out.points.begin() + static_cast<std::ptrdiff_t>(out.preperiod),
                   out.points.end());
  return out;
}

/// Closure of the forward cycle: the smallest closed set the orbit tail
/// never leaves.
inline ClosedSet omega_limit(const FiniteSpace& s, const ContinuousMap& f, std::size_t x) {
  const OrbitSummary orbit = forward_orbit(s, f, x);
  Mask m = 0;
  for (const std::size_t y : orbit.cycle) m |= s.down(y);
  return ClosedSet{s.id(), m};
}

struct LimitMeasureReport {
  Measure limit;        // uniform measure on the orbit's cycle
  Measure empirical;    // Cesaro average of the first n orbit points
  Rational distance;    // weak distance between the two
  Rational bound;       // proven a priori bound on that distance
  std::size_t n = 0;
  std::size_t preperiod = 0;
  std::size_t period = 0;
};

namespace detail {

/// Cesaro average over positions 0..n-1 of a pre-periodic index sequence,
/// computed in closed form: each prefix position contributes once, cycle
/// position j collects floor plus one extra for the first (t mod r) slots.
inline Measure empirical_from_structure(const FiniteSpace& s,
                                        const std::vector<std::size_t>& prefix,
                                        const std::vector<std::size_t>& cycle, std::size_t n) {
  Measure sum = zero_measure(s);
  const Rational inv_n = make_rational(1, static_cast<long long>(n));
  std::vector<Rational> visits(s.size(), Rational(0));
  const std::size_t m = prefix.size(), r = cycle.size();
  for (std::size_t i = 0; i < m && i < n; ++i) visits[prefix[i]] += 1;
  if (n > m) {
    const std::size_t t = n - m;
    for (std::size_t j = 0; j < r; ++j) {
      const Rational count = Rational(t / r) + (j < t % r ? 1 : 0);
      if (count != 0) visits[cycle[j]] += count;
    }
  }
  for (std::size_t x = 0; x < s.size(); ++x)
    if (visits[x] != 0) sum = measure_add(s, sum, measure_scale(dirac(s, x), visits[x] * inv_n));
  return sum;
}

}  // namespace detail

/// Exact form of the forward equidistribution theorem: the Cesaro averages
/// of delta masses along the orbit converge to the uniform cycle measure,
/// with weak distance at most (N + r) / n.
inline LimitMeasureReport theorem_e_limit(const FiniteSpace& s, const ContinuousMap& f,
                                          std::size_t x, std::size_t n) {
  if (n == 0) throw ValidationError("horizon must be positive");
  const OrbitSummary orbit = forward_orbit(s, f, x);
  LimitMeasureReport rep;
  rep.n = n;
  rep.preperiod = orbit.preperiod;
  rep.period = orbit.period;
  rep.limit = uniform_cycle_measure(s, orbit.cycle);
  const std::vector<std::size_t> prefix(orbit.points.begin(),
                                        orbit.points.begin() + static_cast<std::ptrdiff_t>(orbit.preperiod));
  rep.empirical = detail::empirical_from_structure(s, prefix, orbit.cycle, n);
  rep.distance = weak_distance(s, rep.empirical, rep.limit);
  rep.bound = make_rational(static_cast<long long>(orbit.preperiod + orbit.period),
                            static_cast<long long>(n));
  return rep;
}

/// A backward orbit in finite presentation: start = x_0, prefix[i] = x_{-i}
/// reading outward from the endpoint, then a cycle traversed forever. The
/// seam and wrap constraints force prefix points to lie on the cycle.
struct ReverseOrbitSpec {
  std::vector<std::size_t> prefix;  // x_0 .. x_{-(m-1)}; may be empty
  std::vector<std::size_t> cycle;   // x_{-m} .. x_{-m-r+1}; nonempty

  std::size_t start() const { return prefix.empty() ? cycle.front() : prefix.front(); }

  /// x_{-i} for arbitrary i >= 0.
  std::size_t at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return cycle[(i - prefix.size()) % cycle.size()];
  }
};

inline void validate_reverse_orbit(const FiniteSpace& s, const ContinuousMap& f,
                                   const ReverseOrbitSpec& ro) {
  s.check_owns(f.space_id, "map");
  if (ro.cycle.empty()) throw ValidationError("reverse orbit needs a nonempty cycle");
  for (const std::size_t x : ro.prefix)
    if (x >= s.size()) throw ValidationError("reverse orbit point out of range");
  for (const std::size_t x : ro.cycle)
    if (x >= s.size()) throw ValidationError("reverse orbit point out of range");
  const std::size_t r = ro.cycle.size();
  for (std::size_t j = 0; j < r; ++j) {
    const std::size_t expect = ro.cycle[(j + r - 1) % r];
    if (f.to[ro.cycle[j]] != expect)
      throw ValidationError("reverse orbit cycle breaks at " + s.name(ro.cycle[j]) + ": f gives " +
                            s.name(f.to[ro.cycle[j]]) + ", orbit needs " + s.name(expect));
  }
  for (std::size_t i = 1; i < ro.prefix.size(); ++i)
    if (f.to[ro.prefix[i]] != ro.prefix[i - 1])
      throw ValidationError("reverse orbit prefix breaks at " + s.name(ro.prefix[i]));
  if (!ro.prefix.empty() && f.to[ro.cycle[0]] != ro.prefix.back())
    throw ValidationError("reverse orbit seam breaks: f(" + s.name(ro.cycle[0]) + ") is " +
                          s.name(f.to[ro.cycle[0]]) + ", orbit needs " + s.name(ro.prefix.back()));
}

/// Alpha limit of a backward orbit: closure of its cycle. Only defined for
/// surjective maps, where backward orbits are genuine complete histories.
inline ClosedSet alpha_limit(const FiniteSpace& s, const ContinuousMap& f,
                             const ReverseOrbitSpec& ro) {
  s.check_owns(f.space_id, "map");
  if (!f.surjective) throw UndefinedResultError("map not surjective");
  validate_reverse_orbit(s, f, ro);
  Mask m = 0;
  for (const std::size_t y : ro.cycle) m |= s.down(y);
  return ClosedSet{s.id(), m};
}

/// Backward counterpart of the forward limit theorem: Cesaro averages along
/// a backward orbit converge to the uniform measure on its cycle, with
/// distance at most (m + r) / n.
inline LimitMeasureReport theorem_f_limit(const FiniteSpace& s, const ContinuousMap& f,
                                          const ReverseOrbitSpec& ro, std::size_t n) {
  if (n == 0) throw ValidationError("horizon must be positive");
  s.check_owns(f.space_id, "map");
  if (!f.surjective) throw UndefinedResultError("map not surjective");
  validate_reverse_orbit(s, f, ro);
  LimitMeasureReport rep;
  rep.n = n;
  rep.preperiod = ro.prefix.size();
  rep.period = ro.cycle.size();
  std::vector<std::size_t> cycle = ro.cycle;
  const auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it, cycle.end());
  rep.limit = uniform_cycle_measure(s, cycle);
  rep.empirical = detail::empirical_from_structure(s, ro.prefix, ro.cycle, n);
  rep.distance = weak_distance(s, rep.empirical, rep.limit);
  rep.bound = make_rational(static_cast<long long>(ro.prefix.size() + ro.cycle.size()),
                            static_cast<long long>(n));
  return rep;
}

}  // namespace noeth
