#pragma once

// Test-side oracles. Everything here recomputes expected values from first
// principles (declared pairs, brute-force enumeration) so that library
// results are checked against an independent implementation.

#include <noeth/noeth.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using noeth::Mask;
using noeth::Rational;

// Reflexive-transitive closure of declared specialization pairs (y, x),
// meaning y lies in the closure of x.
struct Preorder {
  std::size_t n = 0;
  std::vector<std::vector<bool>> le;  // le[y][x]: y specializes x
};

inline Preorder make_preorder(std::size_t n,
                              const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Preorder p;
  p.n = n;
  p.le.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) p.le[i][i] = true;
  for (const auto& [y, x] : pairs) p.le[y][x] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (p.le[i][k] && p.le[k][j]) p.le[i][j] = true;
  return p;
}

inline bool is_closed(const Preorder& p, Mask m) {
  for (std::size_t x = 0; x < p.n; ++x) {
    if (!((m >> x) & 1u)) continue;
    for (std::size_t y = 0; y < p.n; ++y)
      if (p.le[y][x] && !((m >> y) & 1u)) return false;
  }
  return true;
}

inline Mask closure(const Preorder& p, Mask m) {
  Mask out = 0;
  for (std::size_t x = 0; x < p.n; ++x) {
    if (!((m >> x) & 1u)) continue;
    for (std::size_t y = 0; y < p.n; ++y)
      if (p.le[y][x]) out |= Mask(1) << y;
  }
  return out;
}

inline std::vector<Mask> closed_masks(const Preorder& p) {
  std::vector<Mask> out;
  const Mask all = p.n == 0 ? 0 : (~Mask(0) >> (64 - p.n));
  for (Mask m = 0;; ++m) {
    if (is_closed(p, m)) out.push_back(m);
    if (m == all) break;
  }
  return out;
}

// Irreducibility by the definition: nonempty, closed, and not a union of
// two proper closed subsets.
inline bool is_irreducible(const Preorder& p, Mask e) {
  if (e == 0 || !is_closed(p, e)) return false;
  std::vector<Mask> proper;
  for (const Mask m : closed_masks(p))
    if (m != e && (m & ~e) == 0) proper.push_back(m);
  for (const Mask a : proper)
    for (const Mask b : proper)
      if ((a | b) == e) return false;
  return true;
}

inline std::vector<Mask> irreducible_masks(const Preorder& p) {
  std::vector<Mask> out;
  for (const Mask m : closed_masks(p))
    if (is_irreducible(p, m)) out.push_back(m);
  return out;
}

// Maximal irreducible closed subsets of a closed set.
inline std::vector<Mask> components(const Preorder& p, Mask e) {
  std::vector<Mask> inside;
  for (const Mask m : irreducible_masks(p))
    if ((m & ~e) == 0) inside.push_back(m);
  std::vector<Mask> out;
  for (const Mask a : inside) {
    bool maximal = true;
    for (const Mask b : inside)
      if (a != b && (a & ~b) == 0) maximal = false;
    if (maximal) out.push_back(a);
  }
  return out;
}

inline Mask generic_points(const Preorder& p, Mask e) {
  Mask out = 0;
  for (std::size_t x = 0; x < p.n; ++x)
    if (((e >> x) & 1u) && closure(p, Mask(1) << x) == e) out |= Mask(1) << x;
  return out;
}

// Random pair list over n points; the same list feeds both the oracle
// preorder and build_space so the two derivations stay independent.
inline std::vector<std::pair<std::size_t, std::size_t>> random_pairs(noeth::SplitMix64& rng,
                                                                     std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (y != x && rng.chance(3, 10)) pairs.emplace_back(y, x);
  return pairs;
}

inline std::vector<std::string> point_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

inline noeth::FiniteSpace space_from_pairs(
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs, std::size_t n) {
  const auto names = point_names(n);
  std::vector<std::pair<std::string, std::string>> named;
  for (const auto& [y, x] : pairs) named.emplace_back(names[y], names[x]);
  return noeth::build_space(names, named);
}

// Direct evaluation of a normal-form measure on a closed set.
inline Rational measure_on_closed(const noeth::Measure& mu, Mask closed) {
  Rational out(0);
  for (const auto& [atom, c] : mu.coefficients)
    if ((atom & ~closed) == 0) out += c;
  return out;
}

// Weak distance recomputed from the oracle's own irreducible enumeration.
inline Rational weak_distance(const Preorder& p, const noeth::Measure& a,
                              const noeth::Measure& b) {
  Rational best(0);
  for (const Mask e : irreducible_masks(p)) {
    Rational d = measure_on_closed(a, e) - measure_on_closed(b, e);
    if (d < 0) d = -d;
    if (d > best) best = d;
  }
  return best;
}

// Forward orbit by explicit iteration.
inline std::vector<std::size_t> iterate(const noeth::ContinuousMap& f, std::size_t x,
                                        std::size_t steps) {
  std::vector<std::size_t> out{x};
  for (std::size_t i = 0; i < steps; ++i) out.push_back(f.to[out.back()]);
  return out;
}

// Best backward weight sum by exhaustive path enumeration.
inline std::optional<Rational> tau_minus_n_exhaustive(const noeth::FiniteSpace& s,
                                                      const noeth::ContinuousMap& f,
                                                      const noeth::RealFunction& tau,
                                                      std::size_t x, std::size_t n) {
  if (n == 0) return Rational(0);
  std::optional<Rational> best;
  for (std::size_t w = 0; w < s.size(); ++w) {
    if (f.to[w] != x) continue;
    const auto rest = tau_minus_n_exhaustive(s, f, tau, w, n - 1);
    if (!rest) continue;
    const Rational total = tau.values[w] + *rest;
    if (!best || total > *best) best = total;
  }
  return best;
}

}  // namespace oracle
