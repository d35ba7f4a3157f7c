#pragma once

// Symbolic reasoning about cofinite topologies on infinite carriers, where
// sets can only be finitely described. Descriptors track exact finite or
// cofinite sets and otherwise an honest cardinality class; every operation
// either stays sound or refuses.

#include <noeth/measure.hpp>
#include <noeth/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace noeth {

class NotBorelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class Cardinality { Finite, CountablyInfinite, Uncountable };

struct CofiniteSpace {
  Cardinality card = Cardinality::CountablyInfinite;
  std::uint64_t finite_size = 0;   // meaningful only when card == Finite
  bool named_integers = false;     // carrier is the integers, points addressable
};

inline CofiniteSpace cofinite_space_finite(std::uint64_t n) {
  return CofiniteSpace{Cardinality::Finite, n, false};
}
inline CofiniteSpace cofinite_space_countable() {
  return CofiniteSpace{Cardinality::CountablyInfinite, 0, false};
}
inline CofiniteSpace cofinite_space_uncountable() {
  return CofiniteSpace{Cardinality::Uncountable, 0, false};
}
inline CofiniteSpace cofinite_space_integers() {
  return CofiniteSpace{Cardinality::CountablyInfinite, 0, true};
}

inline bool is_infinite(const CofiniteSpace& s) { return s.card != Cardinality::Finite; }

enum class SymbolicKind {
  FiniteSet,           // exactly the listed elements
  CofiniteSet,         // everything except the listed elements
  AbstractCountable,   // countable, not finitely describable
  AbstractCocountable, // complement countable, not finitely describable
  AbstractNeither      // neither the set nor its complement is countable
};

inline const char* symbolic_kind_name(SymbolicKind k) {
  switch (k) {
    case SymbolicKind::FiniteSet: return "finite";
    case SymbolicKind::CofiniteSet: return "cofinite";
    case SymbolicKind::AbstractCountable: return "countable";
    case SymbolicKind::AbstractCocountable: return "cocountable";
    default: return "neither";
  }
}

struct SymbolicSet {
  SymbolicKind kind = SymbolicKind::FiniteSet;
  std::vector<long long> elements;  // members (FiniteSet) or complement (CofiniteSet)
};

inline SymbolicSet finite_set(std::vector<long long> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return SymbolicSet{SymbolicKind::FiniteSet, std::move(elements)};
}

inline SymbolicSet cofinite_set(std::vector<long long> complement) {
  std::sort(complement.begin(), complement.end());
  complement.erase(std::unique(complement.begin(), complement.end()), complement.end());
  return SymbolicSet{SymbolicKind::CofiniteSet, std::move(complement)};
}

inline SymbolicSet abstract_set(SymbolicKind k) {
  if (k == SymbolicKind::FiniteSet || k == SymbolicKind::CofiniteSet)
    throw ValidationError("abstract descriptor requires an abstract kind");
  return SymbolicSet{k, {}};
}

inline void validate_symbolic(const CofiniteSpace& s, const SymbolicSet& a) {
  switch (a.kind) {
    case SymbolicKind::FiniteSet:
    case SymbolicKind::CofiniteSet:
      return;
    case SymbolicKind::AbstractCountable:
    case SymbolicKind::AbstractCocountable:
      if (!is_infinite(s))
        throw ValidationError("abstract descriptors need an infinite carrier");
      return;
    case SymbolicKind::AbstractNeither:
      if (s.card != Cardinality::Uncountable)
        throw ValidationError("a set with uncountable complement and uncountable self needs an uncountable carrier");
      return;
  }
}

inline SymbolicSet symbolic_complement(const CofiniteSpace& s, const SymbolicSet& a) {
  validate_symbolic(s, a);
  switch (a.kind) {
    case SymbolicKind::FiniteSet: return SymbolicSet{SymbolicKind::CofiniteSet, a.elements};
    case SymbolicKind::CofiniteSet: return SymbolicSet{SymbolicKind::FiniteSet, a.elements};
    case SymbolicKind::AbstractCountable: return abstract_set(SymbolicKind::AbstractCocountable);
    case SymbolicKind::AbstractCocountable: return abstract_set(SymbolicKind::AbstractCountable);
    default: return abstract_set(SymbolicKind::AbstractNeither);
  }
}

namespace detail {

inline std::vector<long long> sorted_union(const std::vector<long long>& a,
                                           const std::vector<long long>& b) {
  std::vector<long long> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<long long> sorted_intersection(const std::vector<long long>& a,
                                                  const std::vector<long long>& b) {
  std::vector<long long> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<long long> sorted_difference(const std::vector<long long>& a,
                                                const std::vector<long long>& b) {
  std::vector<long long> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

/// Union of descriptors, coarsening where exactness is lost. The only
/// genuinely undetermined combinations involve two sets with no countable
/// side, or one of those against a countable set; they are refused.
inline SymbolicSet symbolic_union(const CofiniteSpace& s, const SymbolicSet& a,
                                  const SymbolicSet& b) {
  validate_symbolic(s, a);
  validate_symbolic(s, b);
  using K = SymbolicKind;
  if (int(a.kind) > int(b.kind)) return symbolic_union(s, b, a);
  switch (a.kind) {
    case K::FiniteSet:
      switch (b.kind) {
        case K::FiniteSet: return finite_set(detail::sorted_union(a.elements, b.elements));
        case K::CofiniteSet:
          return SymbolicSet{K::CofiniteSet, detail::sorted_difference(b.elements, a.elements)};
        case K::AbstractCountable: return abstract_set(K::AbstractCountable);
        case K::AbstractCocountable: return abstract_set(K::AbstractCocountable);
        default: return abstract_set(K::AbstractNeither);
      }
    case K::CofiniteSet:
      switch (b.kind) {
        case K::CofiniteSet:
          return SymbolicSet{K::CofiniteSet, detail::sorted_intersection(a.elements, b.elements)};
        default:
          // The union is still cofinite, but its exact complement depends on
          // the abstract operand; cocountable is the tightest sound class.
          return abstract_set(K::AbstractCocountable);
      }
    case K::AbstractCountable:
      switch (b.kind) {
        case K::AbstractCountable: return abstract_set(K::AbstractCountable);
        case K::AbstractCocountable: return abstract_set(K::AbstractCocountable);
        default:
          throw ValidationError("union of countable and neither-class descriptors is undetermined");
      }
    case K::AbstractCocountable:
      return abstract_set(K::AbstractCocountable);
    default:
      throw ValidationError("union of two neither-class descriptors is undetermined");
  }
}

inline SymbolicSet symbolic_intersection(const CofiniteSpace& s, const SymbolicSet& a,
                                         const SymbolicSet& b) {
  return symbolic_complement(
      s, symbolic_union(s, symbolic_complement(s, a), symbolic_complement(s, b)));
}

struct SigmaIrreducibleReport {
  bool singletons = false;   // every singleton is sigma-irreducible closed
  bool whole_space = false;  // the carrier itself qualifies
};

/// On an infinite cofinite carrier the sigma-irreducible closed sets are the
/// singletons together with the whole space; finite carriers are discrete
/// and keep only the singletons.
inline SigmaIrreducibleReport sigma_irreducible_closeds(const CofiniteSpace& s) {
  return SigmaIrreducibleReport{true, is_infinite(s)};
}

/// Completeness of the carrier for measure normal forms: countable carriers
/// admit exhaustion by closed (finite) sets and fail, everything else holds.
inline bool is_complete(const CofiniteSpace& s) {
  return s.card != Cardinality::CountablyInfinite;
}

/// The generic-point mass of the whole space, evaluated on a descriptor:
/// one on the cofinite side, zero on the countable side, and not Borel
/// measurable when the descriptor certifies neither.
inline Rational delta_Y(const CofiniteSpace& s, const SymbolicSet& a) {
  validate_symbolic(s, a);
  if (!is_infinite(s))
    throw ValidationError("the whole space of a finite carrier is reducible; no generic mass exists");
  switch (a.kind) {
    case SymbolicKind::FiniteSet:
    case SymbolicKind::AbstractCountable:
      return Rational(0);
    case SymbolicKind::CofiniteSet:
    case SymbolicKind::AbstractCocountable:
      return Rational(1);
    default:
      throw NotBorelError("descriptor lies outside the countable-cocountable algebra");
  }
}

/// How a descriptor meets the whole-space atom: generically (type 1) when it
/// is co-small, invisibly (type 2) when small, and neither when genuinely
/// undetermined. The third answer is reachable here, unlike finite spaces.
inline IntersectionType classify_against_whole_space(const CofiniteSpace& s,
                                                     const SymbolicSet& a) {
  validate_symbolic(s, a);
  if (!is_infinite(s))
    throw ValidationError("classification against the whole space needs an infinite carrier");
  switch (a.kind) {
    case SymbolicKind::CofiniteSet:
    case SymbolicKind::AbstractCocountable:
      return IntersectionType::Type1;
    case SymbolicKind::FiniteSet:
    case SymbolicKind::AbstractCountable:
      return IntersectionType::Type2;
    default:
      return IntersectionType::Neither;
  }
}

/// Certificate that the evaluation functional of the cofinite uncountable
/// carrier has no measure in normal form: SC functions are constant off a
/// finite set, the functional reads off that constant, every point
/// characteristic function reads zero, yet the constant one reads one. The
/// recovered atom coefficients all vanish, so integration against the
/// recovered measure misses the functional by a full unit.
struct LambdaGapWitness {
  Rational phi_of_one;
  Rational phi_of_point_char;
  Rational recovered_total_mass;
  Rational gap;
  bool contradiction = false;
};

inline LambdaGapWitness lambda_gap_witness(const CofiniteSpace& s) {
  if (s.card != Cardinality::Uncountable)
    throw ValidationError("the representation gap needs an uncountable carrier");
  LambdaGapWitness w;
  // phi(f) = the constant value f takes off its finite exception set.
  w.phi_of_one = 1;          // the constant one function
  w.phi_of_point_char = 0;   // chi_{x} is zero off {x}
  // Inversion over sigma-irreducible closed sets: every singleton atom gets
  // phi(chi_x) = 0, and no other closed set is available below the carrier.
  w.recovered_total_mass = 0;
  w.gap = w.phi_of_one - w.recovered_total_mass;
  w.contradiction = (w.gap != 0);
  return w;
}

/// The successor shift on the cofinite integers: a continuous bijection with
/// no periodic points, hence no ergodic measure in normal form on the base.
/// Its sobrification pins the unique ergodic measure at the generic point of
/// the whole space.
struct ShiftDynamicsReport {
  bool continuous = false;
  bool surjective = false;
  bool injective = false;
  std::uint64_t periodic_point_count = 0;
  std::uint64_t base_ergodic_count = 0;
  std::uint64_t completion_ergodic_count = 0;
  std::string completion_atom;
};

inline ShiftDynamicsReport shift_dynamics_report(const CofiniteSpace& s) {
  if (!s.named_integers)
    throw ValidationError("the shift report needs the integer carrier");
  ShiftDynamicsReport r;
  // Preimages of finite sets under n -> n + 1 are finite translates.
  r.continuous = true;
  r.surjective = true;   // n = (n - 1) + 1
  r.injective = true;
  r.periodic_point_count = 0;  // n + k = n has no solution for k >= 1
  r.base_ergodic_count = 0;
  r.completion_ergodic_count = 1;
  r.completion_atom = "generic point of the whole space";
  return r;
}

}  // namespace noeth
