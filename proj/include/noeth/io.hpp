#pragma once

// JSON file formats and DOT export. All emission goes through ordered maps
// and canonical orders, so identical inputs serialize byte for byte.

#include <noeth/cofinite.hpp>
#include <noeth/dynamics.hpp>
#include <noeth/measure.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace noeth {

using Json = nlohmann::ordered_json;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError(path + ": cannot open file for writing");
  out << text;
}

/// Parses JSON, rewriting parse failures with a line:column anchor.
inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": " + e.what());
  }
}

inline Json load_json(const std::string& path) {
  return parse_json_text(read_text_file(path), path);
}

namespace detail {

inline const Json& require_field(const Json& j, const char* key, const std::string& origin) {
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(origin + ": missing field \"" + key + "\"");
  return *it;
}

inline std::string require_string(const Json& j, const std::string& origin) {
  if (!j.is_string()) throw ValidationError(origin + ": expected a string");
  return j.get<std::string>();
}

}  // namespace detail

// -- spaces -----------------------------------------------------------------

inline FiniteSpace parse_space_json(const Json& j, const std::string& origin = "space") {
  if (!j.is_object()) throw ValidationError(origin + ": expected an object");
  const Json& pts = detail::require_field(j, "points", origin);
  if (!pts.is_array()) throw ValidationError(origin + ": \"points\" must be an array");
  std::vector<std::string> names;
  for (const auto& p : pts) names.push_back(detail::require_string(p, origin + ".points"));
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("specialization")) {
    const Json& sp = j.at("specialization");
    if (!sp.is_array()) throw ValidationError(origin + ": \"specialization\" must be an array");
    for (const auto& pr : sp) {
      if (!pr.is_array() || pr.size() != 2)
        throw ValidationError(origin + ": specialization entries must be [y, x] pairs");
      pairs.emplace_back(detail::require_string(pr[0], origin),
                         detail::require_string(pr[1], origin));
    }
  }
  return build_space(names, pairs);
}

inline FiniteSpace load_space(const std::string& path) {
  return parse_space_json(load_json(path), path);
}

/// Covering pairs (y, x): a generating set for the specialization preorder.
/// Each nontrivial equivalence class contributes a cycle of pairs; between
/// classes only the immediate quotient relations appear, anchored at each
/// class's smallest member.
inline std::vector<std::pair<std::size_t, std::size_t>> covering_pairs(const FiniteSpace& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> rep(n);
  for (std::size_t x = 0; x < n; ++x) rep[x] = std::size_t(std::countr_zero(s.class_of(x)));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < n; ++x) {
    if (rep[x] != x) continue;
    std::vector<std::size_t> members;
    for (Mask rest = s.class_of(x); rest;) {
      const int y = std::countr_zero(rest);
      rest &= rest - 1;
      members.push_back(std::size_t(y));
    }
    for (std::size_t i = 0; i + 1 < members.size(); ++i)
      out.emplace_back(members[i], members[i + 1]);
    if (members.size() > 1) out.emplace_back(members.back(), members.front());
  }
  const auto strictly_below = [&](std::size_t a, std::size_t b) {
    return s.le(a, b) && rep[a] != rep[b];
  };
  for (std::size_t b = 0; b < n; ++b) {
    if (rep[b] != b) continue;
    for (std::size_t a = 0; a < n; ++a) {
      if (rep[a] != a || !strictly_below(a, b)) continue;
      bool covering = true;
      for (std::size_t c = 0; c < n && covering; ++c)
        if (rep[c] == c && strictly_below(a, c) && strictly_below(c, b)) covering = false;
      if (covering) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Json space_to_json(const FiniteSpace& s) {
  Json j;
  j["points"] = Json::array();
  for (std::size_t x = 0; x < s.size(); ++x) j["points"].push_back(s.name(x));
  j["specialization"] = Json::array();
  for (const auto& [y, x] : covering_pairs(s))
    j["specialization"].push_back(Json::array({s.name(y), s.name(x)}));
  return j;
}

// -- functions ----------------------------------------------------------------

inline RealFunction parse_function_json(const FiniteSpace& s, const Json& j,
                                        const std::string& origin = "function") {
  const Json& values = detail::require_field(j, "values", origin);
  if (!values.is_object()) throw ValidationError(origin + ": \"values\" must be an object");
  std::map<std::string, Rational> m;
  for (const auto& [name, val] : values.items()) {
    if (!s.has_point(name)) throw ValidationError(origin + ": unknown point \"" + name + "\"");
    m[name] = parse_rational(detail::require_string(val, origin + ".values"));
  }
  return make_function(s, m);
}

inline RealFunction load_function(const std::string& path, const FiniteSpace& s) {
  return parse_function_json(s, load_json(path), path);
}

inline Json function_to_json(const FiniteSpace& s, const RealFunction& f) {
  s.check_owns(f.space_id, "function");
  Json values = Json::object();
  for (std::size_t x = 0; x < s.size(); ++x) values[s.name(x)] = format_rational(f.values[x]);
  Json j;
  j["values"] = std::move(values);
  return j;
}

// -- measures -----------------------------------------------------------------

/// Atom ids are the members of the irreducible closed set joined by '+'.
/// A bare point name is also accepted on Zariski spaces and denotes the
/// point's closure.
inline Mask parse_atom_id(const FiniteSpace& s, const std::string& id,
                          const std::string& origin) {
  // Point names may themselves contain '+' (completion points are named by
  // their base irreducible ids), so a whole-id point match wins before the
  // id is split into members.
  if (s.has_point(id) && is_zariski(s)) return s.down(s.index(id));
  std::vector<std::string> parts;
  std::string cur;
  for (const char ch : id) {
    if (ch == '+') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  for (const auto& p : parts)
    if (!s.has_point(p))
      throw ValidationError(origin + ": unknown point \"" + p + "\" in atom id \"" + id + "\"");
  if (parts.size() == 1 && is_zariski(s)) return s.down(s.index(parts[0]));
  Mask m = 0;
  for (const auto& p : parts) m |= s.point_mask(p);
  if (!is_irreducible_closed(s, m))
    throw ValidationError(origin + ": atom id \"" + id + "\" is not an irreducible closed set");
  return m;
}

inline Measure parse_measure_json(const FiniteSpace& s, const Json& j,
                                  const std::string& origin = "measure") {
  const Json& coef = detail::require_field(j, "coefficients", origin);
  if (!coef.is_object()) throw ValidationError(origin + ": \"coefficients\" must be an object");
  std::map<Mask, Rational, CanonicalMaskLess> m;
  for (const auto& [id, val] : coef.items()) {
    const Mask mask = parse_atom_id(s, id, origin);
    const Rational c = parse_rational(detail::require_string(val, origin + ".coefficients"));
    auto [it, inserted] = m.emplace(mask, c);
    if (!inserted) throw ValidationError(origin + ": atom \"" + id + "\" appears twice");
  }
  return make_measure(s, std::move(m));
}

inline Measure load_measure(const std::string& path, const FiniteSpace& s) {
  return parse_measure_json(s, load_json(path), path);
}

inline Json measure_to_json(const FiniteSpace& s, const Measure& mu) {
  s.check_owns(mu.space_id, "measure");
  Json coef = Json::object();
  for (const auto& [mask, c] : mu.coefficients) coef[s.set_id(mask)] = format_rational(c);
  Json j;
  j["coefficients"] = std::move(coef);
  return j;
}

/// Human-readable normal form: coefficient times atom, in canonical order.
inline std::string format_measure(const FiniteSpace& s, const Measure& mu) {
  s.check_owns(mu.space_id, "measure");
  if (mu.coefficients.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mask, c] : mu.coefficients) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    out += format_rational(rational_abs(c)) + "*delta{" + s.set_id(mask) + "}";
  }
  return out;
}

// -- maps ---------------------------------------------------------------------

struct LoadedMap {
  FiniteSpace space;
  ContinuousMap map;
};

inline LoadedMap parse_map_json(FiniteSpace space, const Json& j,
                                const std::string& origin = "map") {
  const Json& m = detail::require_field(j, "map", origin);
  if (!m.is_object()) throw ValidationError(origin + ": \"map\" must be an object");
  std::map<std::string, std::string> assignments;
  for (const auto& [from, to] : m.items()) {
    if (!space.has_point(from)) throw ValidationError(origin + ": unknown point \"" + from + "\"");
    assignments[from] = detail::require_string(to, origin + ".map");
    if (!space.has_point(assignments[from]))
      throw ValidationError(origin + ": unknown image point \"" + assignments[from] + "\"");
  }
  ContinuousMap f = make_map(space, assignments);
  return LoadedMap{std::move(space), std::move(f)};
}

/// Map files name their space by path, resolved relative to the map file.
inline LoadedMap load_map(const std::string& path) {
  const Json j = load_json(path);
  const std::string space_ref =
      detail::require_string(detail::require_field(j, "space", path), path + ".space");
  std::filesystem::path space_path(space_ref);
  if (space_path.is_relative()) space_path = std::filesystem::path(path).parent_path() / space_path;
  FiniteSpace space = load_space(space_path.string());
  return parse_map_json(std::move(space), j, path);
}

inline Json map_to_json(const FiniteSpace& s, const ContinuousMap& f,
                        const std::string& space_ref) {
  s.check_owns(f.space_id, "map");
  Json m = Json::object();
  for (std::size_t x = 0; x < s.size(); ++x) m[s.name(x)] = s.name(f.to[x]);
  Json j;
  j["space"] = space_ref;
  j["map"] = std::move(m);
  return j;
}

// -- reverse orbits -------------------------------------------------------------

inline ReverseOrbitSpec parse_reverse_orbit_json(const FiniteSpace& s, const Json& j,
                                                 const std::string& origin = "reverse orbit") {
  ReverseOrbitSpec ro;
  const auto read_points = [&](const Json& arr, std::vector<std::size_t>& out) {
    if (!arr.is_array()) throw ValidationError(origin + ": expected an array of point names");
    for (const auto& p : arr) out.push_back(s.index(detail::require_string(p, origin)));
  };
  if (j.contains("prefix")) read_points(j.at("prefix"), ro.prefix);
  read_points(detail::require_field(j, "cycle", origin), ro.cycle);
  if (ro.cycle.empty()) throw ValidationError(origin + ": cycle must be nonempty");
  if (j.contains("start")) {
    const std::size_t declared = s.index(detail::require_string(j.at("start"), origin));
    if (declared != ro.start())
      throw ValidationError(origin + ": declared start " + s.name(declared) +
                            " does not match the orbit's first point " + s.name(ro.start()));
  }
  return ro;
}

inline ReverseOrbitSpec load_reverse_orbit(const std::string& path, const FiniteSpace& s) {
  return parse_reverse_orbit_json(s, load_json(path), path);
}

inline Json reverse_orbit_to_json(const FiniteSpace& s, const ReverseOrbitSpec& ro) {
  Json j;
  j["start"] = s.name(ro.start());
  j["prefix"] = Json::array();
  for (const std::size_t x : ro.prefix) j["prefix"].push_back(s.name(x));
  j["cycle"] = Json::array();
  for (const std::size_t x : ro.cycle) j["cycle"].push_back(s.name(x));
  return j;
}

// -- cofinite descriptors --------------------------------------------------------

inline CofiniteSpace parse_cofinite_space_json(const Json& j,
                                               const std::string& origin = "cofinite space") {
  const Json& c = detail::require_field(j, "cofinite", origin);
  if (c.is_string()) {
    const std::string kind = c.get<std::string>();
    if (kind == "countable") return cofinite_space_countable();
    if (kind == "uncountable") return cofinite_space_uncountable();
    if (kind == "integers") return cofinite_space_integers();
    throw ValidationError(origin + ": unknown carrier \"" + kind + "\"");
  }
  if (c.is_object() && c.contains("finite") && c.at("finite").is_number_unsigned())
    return cofinite_space_finite(c.at("finite").get<std::uint64_t>());
  throw ValidationError(origin + ": carrier must be \"countable\", \"uncountable\", "
                        "\"integers\", or {\"finite\": n}");
}

inline SymbolicSet parse_symbolic_set_json(const Json& j,
                                           const std::string& origin = "symbolic set") {
  const auto read_elements = [&](const Json& arr) {
    if (!arr.is_array()) throw ValidationError(origin + ": expected an array of integers");
    std::vector<long long> out;
    for (const auto& e : arr) {
      if (!e.is_number_integer()) throw ValidationError(origin + ": elements must be integers");
      out.push_back(e.get<long long>());
    }
    return out;
  };
  if (j.contains("finite")) return finite_set(read_elements(j.at("finite")));
  if (j.contains("cofinite")) return cofinite_set(read_elements(j.at("cofinite")));
  if (j.contains("class")) {
    const std::string c = detail::require_string(j.at("class"), origin);
    if (c == "countable") return abstract_set(SymbolicKind::AbstractCountable);
    if (c == "cocountable") return abstract_set(SymbolicKind::AbstractCocountable);
    if (c == "neither") return abstract_set(SymbolicKind::AbstractNeither);
    throw ValidationError(origin + ": unknown class \"" + c + "\"");
  }
  throw ValidationError(origin + ": expected \"finite\", \"cofinite\", or \"class\"");
}

inline std::string format_symbolic(const SymbolicSet& a) {
  switch (a.kind) {
    case SymbolicKind::FiniteSet:
    case SymbolicKind::CofiniteSet: {
      std::string out = a.kind == SymbolicKind::FiniteSet ? "finite{" : "cofinite{";
      for (std::size_t i = 0; i < a.elements.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a.elements[i]);
      }
      return out + "}";
    }
    default:
      return symbolic_kind_name(a.kind);
  }
}

// -- DOT export ------------------------------------------------------------------

/// One edge per covering pair, drawn from the more generic point down to its
/// immediate specialization.
inline std::string export_dot(const FiniteSpace& s) {
  std::string out = "digraph space {\n  rankdir=BT;\n";
  for (std::size_t x = 0; x < s.size(); ++x) out += "  \"" + s.name(x) + "\";\n";
  for (const auto& [y, x] : covering_pairs(s))
    out += "  \"" + s.name(x) + "\" -> \"" + s.name(y) + "\";\n";
  out += "}\n";
  return out;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace noeth
