#pragma once

// Signed measures on finite Noetherian spaces in normal form: a finite
// weighted sum of irreducible-closed-set atoms, each atom acting as the
// point mass of its generic class. Closed-set values determine and are
// determined by the coefficients (triangular inversion over inclusion).

#include <noeth/function.hpp>
#include <noeth/space.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace noeth {

struct Measure {
  std::uint64_t space_id = 0;
  // Nonzero coefficients only, keyed by irreducible closed set mask.
  std::map<Mask, Rational, CanonicalMaskLess> coefficients;
};

enum class IntersectionType { Type1, Type2, Neither };

inline const char* intersection_type_name(IntersectionType t) {
  switch (t) {
    case IntersectionType::Type1: return "type1";
    case IntersectionType::Type2: return "type2";
    default: return "neither";
  }
}

inline Measure make_measure(const FiniteSpace& s, std::map<Mask, Rational, CanonicalMaskLess> coef) {
  Measure mu;
  mu.space_id = s.id();
  for (auto& [mask, c] : coef) {
    if (!is_irreducible_closed(s, mask))
      throw ValidationError("measure atom " + s.set_display(mask) + " is not irreducible closed");
    if (c != 0) mu.coefficients.emplace(mask, std::move(c));
  }
  return mu;
}

inline Measure zero_measure(const FiniteSpace& s) { return Measure{s.id(), {}}; }

inline Measure dirac(const FiniteSpace& s, std::size_t x) {
  Measure mu;
  mu.space_id = s.id();
  mu.coefficients.emplace(s.down(x), Rational(1));
  return mu;
}

inline Measure dirac(const FiniteSpace& s, const std::string& name) {
  return dirac(s, s.index(name));
}

inline Measure measure_add(const FiniteSpace& s, const Measure& a, const Measure& b) {
  s.check_owns(a.space_id, "measure");
  s.check_owns(b.space_id, "measure");
  Measure out = a;
  for (const auto& [mask, c] : b.coefficients) {
    auto [it, inserted] = out.coefficients.emplace(mask, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.coefficients.erase(it);
    }
  }
  return out;
}

inline Measure measure_scale(const Measure& a, const Rational& r) {
  Measure out;
  out.space_id = a.space_id;
  if (r == 0) return out;
  for (const auto& [mask, c] : a.coefficients) out.coefficients.emplace(mask, c * r);
  return out;
}

inline Rational measure_of_closed(const FiniteSpace& s, const Measure& mu, Mask closed_mask) {
  s.check_owns(mu.space_id, "measure");
  if (!s.is_closed_mask(closed_mask))
    throw ValidationError("measure_of_closed: set " + s.set_display(closed_mask) + " is not closed");
  Rational out(0);
  for (const auto& [mask, c] : mu.coefficients)
    if ((mask & closed_mask) == mask) out += c;
  return out;
}

inline Rational measure_of_closed(const FiniteSpace& s, const Measure& mu, const ClosedSet& f) {
  s.check_owns(f.space_id, "closed set");
  return measure_of_closed(s, mu, f.mask);
}

/// An arbitrary subset meets an atom generically (type 1) or only in its
/// non-generic part (type 2). On finite spaces every intersection is one of
/// the two; Neither is reserved for spaces where genericity can be hidden.
inline IntersectionType classify_intersection(const FiniteSpace& s, Mask subset,
                                              const IrreducibleClosed& e) {
  s.check_owns(e.space_id, "irreducible closed set");
  if ((subset & e.generics) != 0) return IntersectionType::Type1;
  return IntersectionType::Type2;
}

/// Measure of an arbitrary subset: atoms count exactly when the subset meets
/// their generic class.
inline Rational measure_of_set(const FiniteSpace& s, const Measure& mu, Mask subset) {
  s.check_owns(mu.space_id, "measure");
  Rational out(0);
  for (const auto& [mask, c] : mu.coefficients) {
    const IrreducibleClosed e = irreducible_from_mask(s, mask);
    if (classify_intersection(s, subset, e) == IntersectionType::Type1) out += c;
  }
  return out;
}

/// All closed subsets of s, in canonical order. Guarded: 2^n enumeration.
inline std::vector<Mask> enumerate_closed_masks(const FiniteSpace& s) {
  if (s.size() > 20)
    throw ValidationError("closed-set enumeration is limited to 20 points");
  std::vector<Mask> out;
  const Mask all = s.all_mask();
  for (Mask m = 0;; ++m) {
    if (s.is_closed_mask(m)) out.push_back(m);
    if (m == all) break;
  }
  std::sort(out.begin(), out.end(), canonical_mask_less);
  return out;
}

/// Recovers the unique normal form from a closed-set valuation:
/// c_E = v(E) - v(E minus its generic class), then verifies v against the
/// reconstruction on every closed set. Inconsistent valuations are rejected,
/// as are negative coefficients when positivity is demanded.
inline Measure from_closed_set_values(const FiniteSpace& s,
                                      const std::function<Rational(Mask)>& v,
                                      bool require_positive = false) {
  Measure mu;
  mu.space_id = s.id();
  for (const auto& e : s.irreducibles()) {
    Rational c = v(e.set) - v(e.set & ~e.generics);
    if (c != 0) {
      if (require_positive && c < 0)
        throw ValidationError("valuation is not positive: atom " + s.set_display(e.set) +
                              " receives coefficient " + format_rational(c));
      mu.coefficients.emplace(e.set, std::move(c));
    }
  }
  for (const Mask f : enumerate_closed_masks(s)) {
    if (measure_of_closed(s, mu, f) != v(f))
      throw ValidationError("valuation is not a measure: value on " + s.set_display(f) +
                            " disagrees with its atomic reconstruction");
  }
  return mu;
}

inline Rational integrate(const FiniteSpace& s, const Measure& mu, const SCFunction& f) {
  s.check_owns(mu.space_id, "measure");
  s.check_owns(f.g.space_id, "function");
  Rational out(0);
  for (const auto& [mask, c] : mu.coefficients)
    out += c * generic_value(s, f, irreducible_from_mask(s, mask));
  return out;
}

/// SC functions take their generic value on every atom, so integration only
/// needs class-constancy of f, not an explicit decomposition.
inline Rational integrate(const FiniteSpace& s, const Measure& mu, const RealFunction& f) {
  s.check_owns(mu.space_id, "measure");
  s.check_owns(f.space_id, "function");
  for (std::size_t x = 0; x < s.size(); ++x)
    for (Mask rest = s.class_of(x); rest;) {
      const int y = std::countr_zero(rest);
      rest &= rest - 1;
      if (f.values[y] != f.values[x])
        throw ValidationError("integrate: function is not SC");
    }
  Rational out(0);
  for (const auto& [mask, c] : mu.coefficients) {
    const IrreducibleClosed e = irreducible_from_mask(s, mask);
    out += c * f.values[std::countr_zero(e.generics)];
  }
  return out;
}

inline bool is_positive(const Measure& mu) {
  for (const auto& [mask, c] : mu.coefficients)
    if (c < 0) return false;
  return true;
}

inline std::pair<Measure, Measure> jordan_decompose(const FiniteSpace& s, const Measure& mu) {
  s.check_owns(mu.space_id, "measure");
  Measure plus, minus;
  plus.space_id = minus.space_id = s.id();
  for (const auto& [mask, c] : mu.coefficients) {
    if (c > 0)
      plus.coefficients.emplace(mask, c);
    else
      minus.coefficients.emplace(mask, -c);
  }
  return {std::move(plus), std::move(minus)};
}

inline Rational total_variation(const Measure& mu) {
  Rational out(0);
  for (const auto& [mask, c] : mu.coefficients) out += rational_abs(c);
  return out;
}

inline Rational total_mass(const Measure& mu) {
  Rational out(0);
  for (const auto& [mask, c] : mu.coefficients) out += c;
  return out;
}

/// Weak distance: largest disagreement on an irreducible closed set. Zero
/// exactly for equal measures, and the metric of weak convergence here.
inline Rational weak_distance(const FiniteSpace& s, const Measure& a, const Measure& b) {
  s.check_owns(a.space_id, "measure");
  s.check_owns(b.space_id, "measure");
  Rational best(0);
  for (const auto& e : s.irreducibles()) {
    const Rational d = rational_abs(measure_of_closed(s, a, e.set) - measure_of_closed(s, b, e.set));
    if (d > best) best = d;
  }
  return best;
}

/// Image of a measure under the sobrification embedding: each atom moves to
/// the point mass of its own completion point. Integrals of transported
/// functions are preserved on the nose.
inline Measure j_embed(const FiniteSpace& base, const Measure& mu, const Completion& c) {
  base.check_owns(mu.space_id, "measure");
  base.check_owns(c.base_id(), "completion");
  const FiniteSpace& hat = c.completed();
  Measure out;
  out.space_id = hat.id();
  for (const auto& [mask, coef] : mu.coefficients) {
    const std::size_t p = c.point_for(mask);
    auto [it, inserted] = out.coefficients.emplace(hat.down(p), coef);
    if (!inserted) it->second += coef;
  }
  return out;
}

/// Reconstructs coefficients from values on irreducibles alone by peeling in
/// an inclusion-respecting order. Any value vector yields a unique signed
/// measure; no consistency side conditions arise.
inline Measure measure_from_irreducible_values(const FiniteSpace& s,
                                               const std::vector<Rational>& values) {
  const auto& irr = s.irreducibles();
  if (values.size() != irr.size())
    throw ValidationError("expected one value per irreducible closed set");
  std::vector<std::size_t> order(irr.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int pa = std::popcount(irr[a].set), pb = std::popcount(irr[b].set);
    if (pa != pb) return pa < pb;
    return canonical_mask_less(irr[a].set, irr[b].set);
  });
  std::vector<Rational> coef(irr.size(), Rational(0));
  Measure mu;
  mu.space_id = s.id();
  for (const std::size_t i : order) {
    Rational c = values[i];
    for (std::size_t j = 0; j < irr.size(); ++j)
      if (j != i && (irr[j].set & irr[i].set) == irr[j].set) c -= coef[j];
    coef[i] = c;
    if (c != 0) mu.coefficients.emplace(irr[i].set, std::move(c));
  }
  return mu;
}

struct ExtractionResult {
  Measure limit;
  std::vector<std::size_t> indices;   // 0-based into the input sequence
  std::vector<Rational> distances;    // weak distances to the limit, non-increasing
};

/// Extracts a weakly convergent subsequence from a TV-bounded sequence.
///
/// Coordinates are the closed-set values on irreducibles. Bisection rounds
/// (twenty per coordinate, at least sixty) shrink a product of intervals
/// around a cluster point; a half is eligible when it holds at least an
/// eighth of the most recent survivors, so transient early behaviour
/// cannot outvote the tail. Of two eligible halves the one with more recent
/// support wins, ties taking the lower half. A round where neither half is
/// eligible freezes that coordinate. The limit
/// takes the simplest rational in each final interval; indices are then
/// chosen greedily so distances never increase. If the greedy pass over the
/// survivors underfills, the selection falls back to the longest
/// non-increasing distance chain over the whole prefix ending at the latest
/// global minimum, keeping that chain's deepest elements.
inline ExtractionResult extract_convergent_subsequence(
    const FiniteSpace& s, const std::function<Measure(std::size_t)>& sequence,
    std::size_t count, const Rational& tv_bound) {
  if (count == 0) throw ValidationError("subsequence length must be positive");
  if (tv_bound < 0) throw ValidationError("total variation bound must be nonnegative");
  const std::size_t prefix_len = std::max<std::size_t>(4096, 64 * count);
  const auto& irr = s.irreducibles();
  const std::size_t dims = irr.size();

  std::vector<std::vector<Rational>> coords(prefix_len);
  std::vector<std::vector<double>> coords_d(prefix_len);
  for (std::size_t i = 0; i < prefix_len; ++i) {
    const Measure mu = sequence(i);
    s.check_owns(mu.space_id, "measure");
    if (total_variation(mu) > tv_bound)
      throw ValidationError("sequence element " + std::to_string(i) +
                            " exceeds the declared total variation bound");
    coords[i].reserve(dims);
    coords_d[i].reserve(dims);
    for (const auto& e : irr) {
      coords[i].push_back(measure_of_closed(s, mu, e.set));
      coords_d[i].push_back(coords[i].back().convert_to<double>());
    }
  }

  // Certified comparison filter: the cached double images decide whenever
  // they differ beyond a conservative conversion-error band; near-ties and
  // non-finite images fall back to exact arithmetic, so every answer is
  // identical to the all-exact comparison, only cheaper on the common path.
  const auto leq_f = [](const Rational& a, double ad, const Rational& b, double bd) {
    const double gap = ad - bd;
    const double band = 1e-12 * (std::fabs(ad) + std::fabs(bd)) + 1e-290;
    if (gap < -band) return true;
    if (gap > band) return false;
    return a <= b;  // includes NaN images from overflow
  };

  std::vector<Rational> lo(dims, -tv_bound), hi(dims, tv_bound);
  std::vector<std::size_t> survivors(prefix_len);
  for (std::size_t i = 0; i < prefix_len; ++i) survivors[i] = i;

  // Twice the requested count survives every cut, so the final greedy pass
  // has slack even when some survivors break monotonicity.
  const std::size_t min_keep = std::max<std::size_t>(2 * count, 16);
  const std::size_t rounds = std::max<std::size_t>(60, 20 * dims);
  std::size_t stale = 0;  // consecutive rounds that changed nothing
  for (std::size_t round = 0; round < rounds && dims > 0; ++round) {
    // A full sweep without any cut is a fixed point: every later round
    // would replay the same skip or freeze, so stop early.
    if (stale >= dims) break;
    const std::size_t c = round % dims;
    if (lo[c] == hi[c]) {
      ++stale;
      continue;
    }
    const Rational mid = (lo[c] + hi[c]) / 2;
    const double mid_d = mid.convert_to<double>();
    std::vector<std::size_t> lower, upper;
    for (const std::size_t i : survivors)
      (leq_f(coords[i][c], coords_d[i][c], mid, mid_d) ? lower : upper).push_back(i);

    const std::size_t recent = std::max<std::size_t>(64, 2 * count);
    const std::size_t window = std::min(recent, survivors.size());
    const std::size_t cutoff = survivors[survivors.size() - window];
    const auto recent_count = [&](const std::vector<std::size_t>& half) {
      std::size_t n = 0;
      for (const std::size_t i : half)
        if (i >= cutoff) ++n;
      return n;
    };
    const std::size_t quorum = (window + 7) / 8;
    const std::size_t lower_recent = recent_count(lower);
    const std::size_t upper_recent = recent_count(upper);
    const bool lower_ok = lower_recent >= quorum && lower.size() >= min_keep;
    const bool upper_ok = upper_recent >= quorum && upper.size() >= min_keep;
    if (!lower_ok && !upper_ok) {
      ++stale;  // freeze: neither half is viable
      continue;
    }
    // Of two viable halves, keep the one the recent window supports more;
    // a thin-but-viable half must not displace where the tail accumulates.
    const bool take_lower = lower_ok && (!upper_ok || lower_recent >= upper_recent);
    if (take_lower) {
      survivors = std::move(lower);
      hi[c] = mid;
    } else {
      survivors = std::move(upper);
      lo[c] = mid;
    }
    stale = 0;
  }

  std::vector<Rational> limit_values(dims);
  for (std::size_t c = 0; c < dims; ++c) limit_values[c] = simplest_in_interval(lo[c], hi[c]);
  Measure limit = measure_from_irreducible_values(s, limit_values);

  ExtractionResult out;
  out.limit = std::move(limit);
  // Weak distance to the limit is the max-norm gap on the coordinates
  // already materialized above, so no measure is rebuilt here.
  const auto dist_to_limit = [&](std::size_t i) {
    Rational best(0);
    for (std::size_t c = 0; c < dims; ++c) {
      Rational d = rational_abs(coords[i][c] - limit_values[c]);
      if (d > best) best = std::move(d);
    }
    return best;
  };
  std::optional<Rational> last;
  for (const std::size_t i : survivors) {
    if (out.indices.size() == count) break;
    Rational d = dist_to_limit(i);
    if (!last || d <= *last) {
      out.indices.push_back(i);
      last = d;
      out.distances.push_back(std::move(d));
    }
  }
  if (out.indices.size() < count) {
    // The survivors' distance profile can be V-shaped (so the forward greedy
    // underfills) when the sequence revisits the limit non-contiguously.
    // Recover the deepest approach instead: anchor at the global distance
    // minimum (latest occurrence, so the whole prefix lies behind it) and
    // take the longest non-increasing distance chain ending there. Walking
    // backward from the anchor that is the longest non-decreasing
    // subsequence, found by patience sorting; a step-by-step greedy would
    // ratchet its threshold up on the first large value and starve.
    std::vector<Rational> dist(prefix_len);
    std::vector<double> dist_d(prefix_len);
    std::size_t anchor = 0;
    for (std::size_t i = 0; i < prefix_len; ++i) {
      dist[i] = dist_to_limit(i);
      dist_d[i] = dist[i].convert_to<double>();
      if (leq_f(dist[i], dist_d[i], dist[anchor], dist_d[anchor])) anchor = i;
    }
    // rev[j] = dist[anchor - j]; every value is >= dist[anchor], so any
    // non-decreasing chain in rev[1..] extends the anchor.
    const std::size_t m = anchor + 1;
    std::vector<std::size_t> tail_pos;       // patience piles: index into rev
    std::vector<std::size_t> prev(m, m);     // chain predecessor links
    const auto rev = [&](std::size_t j) -> const Rational& { return dist[anchor - j]; };
    const auto rev_d = [&](std::size_t j) { return dist_d[anchor - j]; };
    for (std::size_t j = 1; j < m; ++j) {
      std::size_t lo_p = 0, hi_p = tail_pos.size();
      while (lo_p < hi_p) {  // first pile whose top exceeds rev[j]
        const std::size_t mid_p = (lo_p + hi_p) / 2;
        if (!leq_f(rev(tail_pos[mid_p]), rev_d(tail_pos[mid_p]), rev(j), rev_d(j)))
          hi_p = mid_p;
        else
          lo_p = mid_p + 1;
      }
      prev[j] = lo_p == 0 ? 0 : tail_pos[lo_p - 1];
      if (lo_p == tail_pos.size()) tail_pos.push_back(j); else tail_pos[lo_p] = j;
    }
    std::vector<std::size_t> picked;  // chain positions ascending, anchor first
    picked.push_back(0);
    if (!tail_pos.empty()) {
      for (std::size_t j = tail_pos.back(); j != 0; j = prev[j]) picked.push_back(j);
      std::reverse(picked.begin() + 1, picked.end());
    }
    if (picked.size() < count)
      throw ValidationError("could not extract a monotone subsequence of the requested length");
    picked.resize(count);  // keep the deepest `count` elements of the chain
    out.indices.clear();
    out.distances.clear();
    for (std::size_t k = count; k-- > 0;) {
      out.indices.push_back(anchor - picked[k]);
      out.distances.push_back(dist[anchor - picked[k]]);
    }
  }
  return out;
}

}  // namespace noeth
