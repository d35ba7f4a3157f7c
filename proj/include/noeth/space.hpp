#pragma once

// Finite topological spaces presented by specialization preorder.
//
// A space is a finite point set plus the relation "y lies in closure{x}",
// saturated reflexively and transitively. Closed sets are exactly the
// down-closed subsets, so every topological question below reduces to
// bitmask algebra on at most 64 points.

#include <noeth/rational.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace noeth {

/// Subsets of a space's points, bit i = point with declaration index i.
using Mask = std::uint64_t;

/// Canonical set order: lexicographic on ascending member-index lists.
/// {p} < {p,q} < {q}. Every enumeration in the library iterates in this
/// order so that all outputs are deterministic.
inline bool canonical_mask_less(Mask a, Mask b) {
  while (true) {
    if (a == b) return false;
    if (a == 0) return true;
    if (b == 0) return false;
    const int ia = std::countr_zero(a);
    const int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
}

struct CanonicalMaskLess {
  bool operator()(Mask a, Mask b) const { return canonical_mask_less(a, b); }
};

/// A closed (down-closed) subset of a specific space.
struct ClosedSet {
  std::uint64_t space_id = 0;
  Mask mask = 0;
};

/// A nonempty irreducible closed subset: on finite spaces exactly the point
/// closures. `generics` is the (nonempty) set of its generic points; it has
/// one element precisely on Zariski spaces.
struct IrreducibleClosed {
  std::uint64_t space_id = 0;
  Mask set = 0;
  Mask generics = 0;
};

namespace detail {
inline std::uint64_t next_space_id() {
  static std::uint64_t counter = 0;
  return ++counter;
}
}  // namespace detail

class FiniteSpace {
 public:
  static constexpr std::size_t kMaxPoints = 64;

  FiniteSpace() = default;

  std::size_t size() const { return names_.size(); }
  std::uint64_t id() const { return id_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  std::size_t index(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw ValidationError("unknown point name: \"" + name + "\"");
    return it->second;
  }

  bool has_point(const std::string& name) const { return index_.count(name) != 0; }

  /// closure{x} as a mask.
  Mask down(std::size_t x) const { return down_[x]; }
  /// {y : x in closure{y}}, the generizations of x.
  Mask up(std::size_t x) const { return up_[x]; }
  /// y <= x, i.e. y in closure{x}.
  bool le(std::size_t y, std::size_t x) const { return (down_[x] >> y) & 1u; }
  /// Specialization-equivalence class of x (singleton iff x is T0-separated).
  Mask class_of(std::size_t x) const { return down_[x] & up_[x]; }

  Mask all_mask() const { return size() == 0 ? 0 : (~Mask(0) >> (kMaxPoints - size())); }

  Mask closure_mask(Mask subset) const {
    Mask out = 0;
    for (Mask rest = subset; rest;) {
      const int x = std::countr_zero(rest);
      rest &= rest - 1;
      out |= down_[x];
    }
    return out;
  }

  bool is_closed_mask(Mask subset) const { return closure_mask(subset) == subset; }

  /// All nonempty irreducible closed subsets in canonical order.
  const std::vector<IrreducibleClosed>& irreducibles() const { return irreducibles_; }

  /// Position of an irreducible closed set in irreducibles(), if it is one.
  std::optional<std::size_t> irreducible_index(Mask set) const {
    const auto it = irr_index_.find(set);
    if (it == irr_index_.end()) return std::nullopt;
    return it->second;
  }

  void check_owns(std::uint64_t other_id, const char* what) const {
    if (other_id != id_)
      throw ValidationError(std::string("space mismatch: ") + what +
                            " belongs to a different space");
  }

  Mask point_mask(const std::string& name) const { return Mask(1) << index(name); }

  /// Members of a mask as names, declaration order.
  std::vector<std::string> member_names(Mask m) const {
    std::vector<std::string> out;
    for (Mask rest = m; rest;) {
      const int x = std::countr_zero(rest);
      rest &= rest - 1;
      out.push_back(names_[x]);
    }
    return out;
  }

  /// Canonical id of a point set: member names joined by "+".
  std::string set_id(Mask m) const {
    std::string out;
    bool first = true;
    for (const auto& n : member_names(m)) {
      if (!first) out += "+";
      out += n;
      first = false;
    }
    return out;
  }

  /// Display form "{a,b,c}" used on the text surfaces.
  std::string set_display(Mask m) const {
    std::string out = "{";
    bool first = true;
    for (const auto& n : member_names(m)) {
      if (!first) out += ",";
      out += n;
      first = false;
    }
    return out + "}";
  }

  friend FiniteSpace build_space(const std::vector<std::string>& points,
                                 const std::vector<std::pair<std::string, std::string>>& pairs);

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<Mask> down_;
  std::vector<Mask> up_;
  std::vector<IrreducibleClosed> irreducibles_;
  std::map<Mask, std::size_t, CanonicalMaskLess> irr_index_;
  std::uint64_t id_ = 0;
};

/// Builds a space from point names and specialization pairs (y, x) meaning
/// y in closure{x}. The relation is saturated reflexively and transitively.
inline FiniteSpace build_space(const std::vector<std::string>& points,
                               const std::vector<std::pair<std::string, std::string>>& pairs) {
  FiniteSpace s;
  if (points.size() > FiniteSpace::kMaxPoints)
    throw ValidationError("build_space: more than 64 points is not supported");
  for (const auto& p : points) {
    if (p.empty()) throw ValidationError("build_space: empty point name");
    // '+' stays legal so completion points can be named by their base
    // irreducible ids; display braces, commas, and whitespace stay reserved.
    for (const char c : p)
      if (c == ',' || c == '{' || c == '}' || c == ' ' || c == '\t' || c == '\n')
        throw ValidationError("build_space: point name \"" + p +
                              "\" contains a reserved character");
    if (s.index_.count(p)) throw ValidationError("build_space: duplicate point \"" + p + "\"");
    s.index_[p] = s.names_.size();
    s.names_.push_back(p);
  }
  const std::size_t n = s.names_.size();
  s.down_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) s.down_[i] = Mask(1) << i;
  for (const auto& [y, x] : pairs) s.down_[s.index(x)] |= Mask(1) << s.index(y);
  // Transitive saturation: closure{x} absorbs the closures of its members.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      Mask acc = s.down_[x];
      for (Mask rest = s.down_[x]; rest;) {
        const int y = std::countr_zero(rest);
        rest &= rest - 1;
        acc |= s.down_[y];
      }
      if (acc != s.down_[x]) {
        s.down_[x] = acc;
        changed = true;
      }
    }
  }
  s.up_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if ((s.down_[x] >> y) & 1u) s.up_[y] |= Mask(1) << x;
  s.id_ = detail::next_space_id();
  // Irreducible closed sets of a finite space are exactly the point
  // closures; the generic points of closure{x} are the points sharing it.
  std::map<Mask, Mask, CanonicalMaskLess> by_set;
  for (std::size_t x = 0; x < n; ++x) by_set[s.down_[x]] |= Mask(1) << x;
  for (const auto& [set, generics] : by_set) {
    s.irr_index_[set] = s.irreducibles_.size();
    s.irreducibles_.push_back(IrreducibleClosed{s.id_, set, generics});
  }
  return s;
}

inline ClosedSet closure(const FiniteSpace& s, Mask subset) {
  if (subset & ~s.all_mask()) throw ValidationError("closure: subset outside the space");
  return ClosedSet{s.id(), s.closure_mask(subset)};
}

inline ClosedSet closure(const FiniteSpace& s, const std::vector<std::string>& points) {
  Mask m = 0;
  for (const auto& p : points) m |= s.point_mask(p);
  return ClosedSet{s.id(), s.closure_mask(m)};
}

inline ClosedSet closed_set(const FiniteSpace& s, Mask mask) {
  if (mask & ~s.all_mask()) throw ValidationError("closed_set: subset outside the space");
  if (!s.is_closed_mask(mask))
    throw ValidationError("closed_set: " + s.set_display(mask) + " is not closed");
  return ClosedSet{s.id(), mask};
}

/// Whole space as a closed set.
inline ClosedSet whole_space(const FiniteSpace& s) { return ClosedSet{s.id(), s.all_mask()}; }

inline bool is_irreducible_closed(const FiniteSpace& s, Mask set) {
  return s.irreducible_index(set).has_value();
}

/// The irreducible closed set closure{x}.
inline IrreducibleClosed point_closure(const FiniteSpace& s, std::size_t x) {
  return s.irreducibles()[*s.irreducible_index(s.down(x))];
}

inline IrreducibleClosed irreducible_from_mask(const FiniteSpace& s, Mask set) {
  const auto idx = s.irreducible_index(set);
  if (!idx)
    throw ValidationError("not an irreducible closed set: " + s.set_display(set));
  return s.irreducibles()[*idx];
}

/// Unique minimal decomposition of a closed set into irreducible closed
/// components: the inclusion-maximal point closures inside it. Canonical
/// order, pairwise incomparable, union is the input.
inline std::vector<IrreducibleClosed> irreducible_components(const FiniteSpace& s,
                                                             const ClosedSet& e) {
  s.check_owns(e.space_id, "closed set");
  if (!s.is_closed_mask(e.mask))
    throw ValidationError("irreducible_components: input set is not closed");
  std::vector<Mask> candidates;
  for (Mask rest = e.mask; rest;) {
    const int x = std::countr_zero(rest);
    rest &= rest - 1;
    const Mask d = s.down(x);
    if (std::find(candidates.begin(), candidates.end(), d) == candidates.end())
      candidates.push_back(d);
  }
  std::vector<Mask> maximal;
  for (const Mask c : candidates) {
    bool dominated = false;
    for (const Mask other : candidates)
      if (other != c && (c & ~other) == 0) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(c);
  }
  std::sort(maximal.begin(), maximal.end(), canonical_mask_less);
  std::vector<IrreducibleClosed> out;
  out.reserve(maximal.size());
  for (const Mask m : maximal) out.push_back(irreducible_from_mask(s, m));
  return out;
}

/// A space is Zariski iff every nonempty irreducible closed set has exactly
/// one generic point; on finite spaces this is the T0 condition.
inline bool is_zariski(const FiniteSpace& s) {
  for (const auto& irr : s.irreducibles())
    if (std::popcount(irr.generics) != 1) return false;
  return true;
}

/// The completion (sobrification) of a finite space. Points are the
/// nonempty irreducible closed subsets of the base; specialization is
/// inclusion; completion point names are canonical base-set ids.
class Completion {
 public:
  Completion(std::uint64_t base_id, FiniteSpace completed, std::vector<Mask> base_sets)
      : base_id_(base_id), completed_(std::move(completed)), base_sets_(std::move(base_sets)) {
    for (std::size_t i = 0; i < base_sets_.size(); ++i) index_[base_sets_[i]] = i;
  }

  std::uint64_t base_id() const { return base_id_; }
  const FiniteSpace& completed() const { return completed_; }

  /// Base irreducible closed set represented by completion point i.
  Mask base_set(std::size_t i) const { return base_sets_[i]; }

  /// Completion point index for a base irreducible closed set.
  std::size_t point_for(Mask base_irreducible) const {
    const auto it = index_.find(base_irreducible);
    if (it == index_.end())
      throw ValidationError("completion: not an irreducible closed set of the base");
    return it->second;
  }

  /// Embedding of a base point: x maps to the completion point closure{x}.
  std::size_t embed_point(const FiniteSpace& base, std::size_t x) const {
    base.check_owns(base_id_, "base space");
    return point_for(base.down(x));
  }

  /// V_E = {F irreducible : F subset of E}, the closed set of the completion
  /// corresponding to closed E. E -> V_E is a bijection on closed sets.
  ClosedSet v_set(const FiniteSpace& base, const ClosedSet& e) const {
    base.check_owns(base_id_, "base space");
    base.check_owns(e.space_id, "closed set");
    if (!base.is_closed_mask(e.mask)) throw ValidationError("v_set: input set is not closed");
    Mask out = 0;
    for (std::size_t i = 0; i < base_sets_.size(); ++i)
      if ((base_sets_[i] & ~e.mask) == 0) out |= Mask(1) << i;
    return ClosedSet{completed_.id(), out};
  }

 private:
  std::uint64_t base_id_ = 0;
  FiniteSpace completed_;
  std::vector<Mask> base_sets_;
  std::map<Mask, std::size_t, CanonicalMaskLess> index_;
};

inline Completion complete_space(const FiniteSpace& s) {
  std::vector<Mask> sets;
  std::vector<std::string> names;
  sets.reserve(s.irreducibles().size());
  for (const auto& irr : s.irreducibles()) {
    sets.push_back(irr.set);
    names.push_back(s.set_id(irr.set));
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j)
      if (i != j && (sets[i] & ~sets[j]) == 0) pairs.emplace_back(names[i], names[j]);
  return Completion(s.id(), build_space(names, pairs), std::move(sets));
}

}  // namespace noeth
