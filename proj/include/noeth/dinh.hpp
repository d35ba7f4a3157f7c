#pragma once

// Forward and backward Birkhoff growth of a USC weight along a continuous
// self-map. Backward sums maximize over all reverse orbits, giving a
// max-plus recursion; on finite spaces the asymptotics collapse onto cycle
// means, with bottom at points admitting no infinite backward history.

#include <noeth/dynamics.hpp>
#include <noeth/function.hpp>

#include <optional>
#include <vector>

namespace noeth {

namespace detail {

inline void require_usc_weight(const FiniteSpace& s, const RealFunction& tau) {
  s.check_owns(tau.space_id, "function");
  if (!is_usc(s, tau)) throw ValidationError("weight function must be upper semicontinuous");
}

inline void require_zariski(const FiniteSpace& s) {
  if (!is_zariski(s)) throw ValidationError("space is not zariski: pass to its completion first");
}

inline Rational cycle_mean(const std::vector<std::size_t>& cycle, const RealFunction& tau) {
  Rational sum(0);
  for (const std::size_t y : cycle) sum += tau.values[y];
  return sum / static_cast<long long>(cycle.size());
}

}  // namespace detail

/// Forward Birkhoff sum over n steps, in closed form through the orbit's
/// prefix-cycle structure.
inline Rational tau_n(const FiniteSpace& s, const ContinuousMap& f, const RealFunction& tau,
                      std::size_t x, std::size_t n) {
  detail::require_usc_weight(s, tau);
  s.check_owns(f.space_id, "map");
  const OrbitSummary orbit = forward_orbit(s, f, x);
  const std::size_t m = orbit.preperiod, r = orbit.period;
  Rational sum(0);
  for (std::size_t i = 0; i < m && i < n; ++i) sum += tau.values[orbit.points[i]];
  if (n > m) {
    const std::size_t t = n - m;
    Rational cycle_total(0);
    for (std::size_t j = 0; j < r; ++j) cycle_total += tau.values[orbit.cycle[j]];
    sum += cycle_total * Rational(t / r);
    for (std::size_t j = 0; j < t % r; ++j) sum += tau.values[orbit.cycle[j]];
  }
  return sum;
}

/// Forward growth rate: the mean of the weight over the orbit's cycle.
inline Rational tau_plus(const FiniteSpace& s, const ContinuousMap& f, const RealFunction& tau,
                         std::size_t x) {
  detail::require_usc_weight(s, tau);
  detail::require_zariski(s);
  const OrbitSummary orbit = forward_orbit(s, f, x);
  return detail::cycle_mean(orbit.cycle, tau);
}

/// Best backward sum over n steps: the max-plus recursion
/// T_n(x) = max over w with f(w) = x of tau(w) + T_{n-1}(w), T_0 = 0.
/// Bottom (nullopt) when no backward path of length n reaches x.
inline std::optional<Rational> tau_minus_n(const FiniteSpace& s, const ContinuousMap& f,
                                           const RealFunction& tau, std::size_t x, std::size_t n) {
  detail::require_usc_weight(s, tau);
  s.check_owns(f.space_id, "map");
  if (x >= s.size()) throw ValidationError("point out of range");
  if (n < 1) throw ValidationError("backward horizon must be at least 1");
  std::vector<std::optional<Rational>> cur(s.size(), Rational(0));
  std::vector<std::optional<Rational>> next(s.size());
  for (std::size_t step = 0; step < n; ++step) {
    for (std::size_t y = 0; y < s.size(); ++y) {
      next[y] = std::nullopt;
      for (Mask rest = f.preimage[y]; rest;) {
        const int w = std::countr_zero(rest);
        rest &= rest - 1;
        if (!cur[w]) continue;
        const Rational cand = tau.values[w] + *cur[w];
        if (!next[y] || cand > *next[y]) next[y] = cand;
      }
    }
    std::swap(cur, next);
  }
  return cur[x];
}

/// Mask of points lying on some cycle.
inline Mask periodic_points(const FiniteSpace& s, const ContinuousMap& f) {
  Mask m = 0;
  for (const auto& cycle : enumerate_cycles(s, f))
    for (const std::size_t x : cycle) m |= Mask(1) << x;
  return m;
}

/// Backward growth rate: the best cycle mean among cycles reachable from x
/// against the flow; bottom when no infinite backward history exists. On
/// finite spaces at most one cycle qualifies, the point's own.
inline std::optional<Rational> tau_minus(const FiniteSpace& s, const ContinuousMap& f,
                                         const RealFunction& tau, std::size_t x) {
  detail::require_usc_weight(s, tau);
  detail::require_zariski(s);
  s.check_owns(f.space_id, "map");
  if (x >= s.size()) throw ValidationError("point out of range");
  Mask reached = Mask(1) << x;
  std::vector<std::size_t> queue{x};
  while (!queue.empty()) {
    const std::size_t y = queue.back();
    queue.pop_back();
    for (Mask rest = f.preimage[y] & ~reached; rest;) {
      const int w = std::countr_zero(rest);
      rest &= rest - 1;
      reached |= Mask(1) << w;
      queue.push_back(std::size_t(w));
    }
  }
  std::optional<Rational> best;
  for (const auto& cycle : enumerate_cycles(s, f)) {
    bool touches = false;
    for (const std::size_t y : cycle)
      if ((reached >> y) & 1u) touches = true;
    if (!touches) continue;
    const Rational mean = detail::cycle_mean(cycle, tau);
    if (!best || mean > *best) best = mean;
  }
  return best;
}

/// Closure form of the backward rate: the best forward rate among periodic
/// generizations. Agrees with tau_minus whenever f is surjective; without
/// surjectivity the two genuinely diverge.
inline std::optional<Rational> tau_minus_closure_formula(const FiniteSpace& s,
                                                         const ContinuousMap& f,
                                                         const RealFunction& tau, std::size_t x) {
  detail::require_usc_weight(s, tau);
  detail::require_zariski(s);
  if (x >= s.size()) throw ValidationError("point out of range");
  const Mask periodic = periodic_points(s, f);
  std::optional<Rational> best;
  for (Mask rest = s.up(x) & periodic; rest;) {
    const int y = std::countr_zero(rest);
    rest &= rest - 1;
    const Rational rate = tau_plus(s, f, tau, std::size_t(y));
    if (!best || rate > *best) best = rate;
  }
  return best;
}

/// Witness for the backward rate: the reverse orbit that walks the point's
/// own cycle against the flow forever. Only periodic points have one.
inline ReverseOrbitSpec best_reverse_orbit(const FiniteSpace& s, const ContinuousMap& f,
                                           const RealFunction& tau, std::size_t x) {
  detail::require_usc_weight(s, tau);
  detail::require_zariski(s);
  if (x >= s.size()) throw ValidationError("point out of range");
  const OrbitSummary orbit = forward_orbit(s, f, x);
  if (orbit.preperiod != 0)
    throw UndefinedResultError("point " + s.name(x) + " has no infinite reverse orbit");
  ReverseOrbitSpec ro;
  ro.prefix = {x};
  // Against the flow the cycle reads x_{-1} = f^{r-1}(x), .., x_{-r} = x:
  // the forward cycle reversed.
  ro.cycle.assign(orbit.cycle.rbegin(), orbit.cycle.rend());
  validate_reverse_orbit(s, f, ro);
  return ro;
}

struct TauPointReport {
  std::size_t point = 0;
  Rational plus;
  std::optional<Rational> minus;
  std::vector<std::size_t> witness_cycle;  // empty when minus is bottom
};

using TauProfile = std::vector<TauPointReport>;

inline TauProfile tau_profile(const FiniteSpace& s, const ContinuousMap& f,
                              const RealFunction& tau) {
  detail::require_usc_weight(s, tau);
  detail::require_zariski(s);
  TauProfile out;
  out.reserve(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    TauPointReport row;
    row.point = x;
    row.plus = tau_plus(s, f, tau, x);
    row.minus = tau_minus(s, f, tau, x);
    if (row.minus) row.witness_cycle = best_reverse_orbit(s, f, tau, x).cycle;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace noeth
