#pragma once

// Upper semicontinuous and SC functions on finite spaces.
//
// USC on a finite space means every level set {f >= r} is down-closed,
// equivalently f(y) >= f(x) whenever y lies in closure{x}. SC functions are
// differences g - h of USC parts; on finite T0 spaces every function is SC,
// and in general exactly the functions constant on specialization classes.

#include <noeth/space.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace noeth {

struct RealFunction {
  std::uint64_t space_id = 0;
  std::vector<Rational> values;  // indexed by point declaration order
};

inline RealFunction make_function(const FiniteSpace& s, std::vector<Rational> values) {
  if (values.size() != s.size())
    throw ValidationError("function must assign a value to every point");
  return RealFunction{s.id(), std::move(values)};
}

inline RealFunction make_function(const FiniteSpace& s,
                                  const std::map<std::string, Rational>& values) {
  std::vector<Rational> v(s.size(), Rational(0));
  for (const auto& [name, val] : values) v[s.index(name)] = val;
  if (values.size() != s.size())
    throw ValidationError("function must assign a value to every point");
  return RealFunction{s.id(), std::move(v)};
}

inline RealFunction constant_function(const FiniteSpace& s, const Rational& c) {
  return RealFunction{s.id(), std::vector<Rational>(s.size(), c)};
}

/// Characteristic function of a closed set.
inline RealFunction char_function(const FiniteSpace& s, const ClosedSet& f) {
  s.check_owns(f.space_id, "closed set");
  std::vector<Rational> v(s.size(), Rational(0));
  for (Mask rest = f.mask; rest;) {
    const int x = std::countr_zero(rest);
    rest &= rest - 1;
    v[x] = 1;
  }
  return RealFunction{s.id(), std::move(v)};
}

inline bool is_usc(const FiniteSpace& s, const RealFunction& f) {
  s.check_owns(f.space_id, "function");
  for (std::size_t x = 0; x < s.size(); ++x)
    for (Mask rest = s.down(x); rest;) {
      const int y = std::countr_zero(rest);
      rest &= rest - 1;
      if (f.values[y] < f.values[x]) return false;
    }
  return true;
}

/// First (y, x) with y in closure{x} but f(y) < f(x), if any.
inline std::optional<std::pair<std::size_t, std::size_t>> usc_violation(
    const FiniteSpace& s, const RealFunction& f) {
  for (std::size_t x = 0; x < s.size(); ++x)
    for (Mask rest = s.down(x); rest;) {
      const int y = std::countr_zero(rest);
      rest &= rest - 1;
      if (f.values[y] < f.values[x]) return std::make_pair(std::size_t(y), std::size_t(x));
    }
  return std::nullopt;
}

struct SCFunction {
  RealFunction g;
  RealFunction h;

  Rational eval(std::size_t x) const { return g.values[x] - h.values[x]; }
};

namespace detail {

/// Length of the longest strict generization chain above x. Equivalent
/// points share a value, so K * height is USC and rises by at least K per
/// strict specialization step.
inline std::vector<long long> generization_heights(const FiniteSpace& s) {
  const std::size_t n = s.size();
  std::vector<long long> height(n, -1);
  // Strict order on classes: x < g iff x <= g and not g <= x.
  const auto strict_ups = [&](std::size_t x) {
    return s.up(x) & ~s.down(x);
  };
  // Longest-path DP; the strict order is acyclic so depth-first works.
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (height[start] >= 0) continue;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      bool ready = true;
      long long best = 0;
      for (Mask rest = strict_ups(x); rest;) {
        const int g = std::countr_zero(rest);
        rest &= rest - 1;
        if (height[g] < 0) {
          stack.push_back(g);
          ready = false;
        } else {
          best = std::max(best, height[g] + 1);
        }
      }
      if (ready) {
        height[x] = best;
        stack.pop_back();
      }
    }
  }
  return height;
}

}  // namespace detail

/// Splits f into USC parts f = g - h. USC inputs return (f, 0) unchanged;
/// otherwise the canonical correction h = K * chain-height with
/// K = 2 * max|f| + 1 makes both parts USC. Functions that separate
/// mutually-specializing points are not SC and are rejected.
inline SCFunction sc_decompose(const FiniteSpace& s, const RealFunction& f) {
  s.check_owns(f.space_id, "function");
  for (std::size_t x = 0; x < s.size(); ++x)
    for (Mask rest = s.class_of(x); rest;) {
      const int y = std::countr_zero(rest);
      rest &= rest - 1;
      if (f.values[y] != f.values[x])
        throw ValidationError("function is not SC: points " + s.name(y) + " and " + s.name(x) +
                              " are topologically indistinguishable but carry different values");
    }
  if (is_usc(s, f)) return SCFunction{f, constant_function(s, Rational(0))};
  Rational maxabs(0);
  for (const auto& v : f.values) maxabs = std::max(maxabs, rational_abs(v));
  const Rational k = 2 * maxabs + 1;
  const auto heights = detail::generization_heights(s);
  RealFunction h{s.id(), std::vector<Rational>(s.size())};
  RealFunction g{s.id(), std::vector<Rational>(s.size())};
  for (std::size_t x = 0; x < s.size(); ++x) {
    h.values[x] = k * heights[x];
    g.values[x] = f.values[x] + h.values[x];
  }
  return SCFunction{std::move(g), std::move(h)};
}

inline SCFunction make_sc(const FiniteSpace& s, const RealFunction& g, const RealFunction& h) {
  s.check_owns(g.space_id, "function");
  s.check_owns(h.space_id, "function");
  if (!is_usc(s, g) || !is_usc(s, h))
    throw ValidationError("SC parts must both be upper semicontinuous");
  return SCFunction{g, h};
}

/// Generic value f(E) = g(E) - h(E) with g(E) = inf over E of g. The inf of
/// a USC function over an irreducible closed set is attained at its generic
/// points, so this equals f there; independence of the decomposition is a
/// property-tested invariant.
inline Rational generic_value(const FiniteSpace& s, const SCFunction& f,
                              const IrreducibleClosed& e) {
  s.check_owns(f.g.space_id, "function");
  s.check_owns(e.space_id, "irreducible closed set");
  if (e.set == 0) throw ValidationError("generic_value: empty set");
  const auto inf_over = [&](const RealFunction& part) {
    std::optional<Rational> best;
    for (Mask rest = e.set; rest;) {
      const int x = std::countr_zero(rest);
      rest &= rest - 1;
      if (!best || part.values[x] < *best) best = part.values[x];
    }
    return *best;
  };
  return inf_over(f.g) - inf_over(f.h);
}

inline Rational sup_norm(const FiniteSpace& s, const SCFunction& f) {
  s.check_owns(f.g.space_id, "function");
  Rational best(0);
  for (std::size_t x = 0; x < s.size(); ++x) best = std::max(best, rational_abs(f.eval(x)));
  return best;
}

inline Rational sup_norm(const FiniteSpace& s, const RealFunction& f) {
  s.check_owns(f.space_id, "function");
  Rational best(0);
  for (const auto& v : f.values) best = std::max(best, rational_abs(v));
  return best;
}

/// Weighted characteristic-function expansion of a USC function over the
/// partition through all attained values: (r_0, X) then
/// (r_i - r_{i-1}, {f >= r_i}). Exact at every point on finite spaces.
struct CharCombination {
  std::uint64_t space_id = 0;
  std::vector<std::pair<Rational, ClosedSet>> terms;

  Rational eval(std::size_t x) const {
    Rational out(0);
    for (const auto& [coef, set] : terms)
      if ((set.mask >> x) & 1u) out += coef;
    return out;
  }
};

inline CharCombination char_combination(const FiniteSpace& s, const RealFunction& f) {
  s.check_owns(f.space_id, "function");
  if (!is_usc(s, f)) throw ValidationError("char_combination: input is not USC");
  CharCombination out;
  out.space_id = s.id();
  if (s.size() == 0) return out;
  std::vector<Rational> levels = f.values;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  out.terms.emplace_back(levels[0], whole_space(s));
  for (std::size_t i = 1; i < levels.size(); ++i) {
    Mask level_set = 0;
    for (std::size_t x = 0; x < s.size(); ++x)
      if (f.values[x] >= levels[i]) level_set |= Mask(1) << x;
    out.terms.emplace_back(levels[i] - levels[i - 1], ClosedSet{s.id(), level_set});
  }
  return out;
}

/// Transport along the isometry SC(X) -> SC(X-hat): the value at completion
/// point E is the generic value at E; characteristic functions of F map to
/// characteristic functions of V_F and the sup norm is preserved.
inline SCFunction eta_transport(const FiniteSpace& base, const SCFunction& f,
                                const Completion& c) {
  base.check_owns(f.g.space_id, "function");
  base.check_owns(c.base_id(), "completion");
  const FiniteSpace& hat = c.completed();
  RealFunction g{hat.id(), std::vector<Rational>(hat.size())};
  RealFunction h{hat.id(), std::vector<Rational>(hat.size())};
  for (std::size_t i = 0; i < hat.size(); ++i) {
    const IrreducibleClosed e = irreducible_from_mask(base, c.base_set(i));
    const auto inf_over = [&](const RealFunction& part) {
      std::optional<Rational> best;
      for (Mask rest = e.set; rest;) {
        const int x = std::countr_zero(rest);
        rest &= rest - 1;
        if (!best || part.values[x] < *best) best = part.values[x];
      }
      return *best;
    };
    g.values[i] = inf_over(f.g);
    h.values[i] = inf_over(f.h);
  }
  return SCFunction{std::move(g), std::move(h)};
}

}  // namespace noeth
