// Command-line surface over the library: file ingestion, reports, seeded
// generation, and the verification suite. All output is deterministic for a
// fixed invocation; timings go to stderr only.

#include <noeth/noeth.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace noeth;

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("NOETH_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw ValidationError("NOETH_SEED must be an unsigned integer");
    return static_cast<std::uint64_t>(v);
  }
  return flag_seed;
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : csv) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Mask parse_point_set(const FiniteSpace& s, const std::string& csv) {
  Mask m = 0;
  for (const auto& name : split_names(csv)) m |= s.point_mask(name);
  return m;
}

void emit(const std::string& text) { std::cout << text << "\n"; }

std::string format_optional(const std::optional<Rational>& v) {
  return v ? format_rational(*v) : "bottom";
}

std::string format_cycle(const FiniteSpace& s, const std::vector<std::size_t>& cycle) {
  std::string out = "[";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += " ";
    out += s.name(cycle[i]);
  }
  return out + "]";
}

// -- space ------------------------------------------------------------------

int cmd_space_check(const std::string& file, const std::string& format) {
  const FiniteSpace s = load_space(file);
  if (format == "structured") {
    Json j;
    j["valid"] = true;
    j["points"] = s.size();
    j["zariski"] = is_zariski(s);
    std::cout << dump_json(j);
  } else {
    emit(std::string("valid; zariski: ") + (is_zariski(s) ? "true" : "false"));
  }
  return 0;
}

int cmd_space_components(const std::string& file, const std::string& set_csv,
                         const std::string& format) {
  const FiniteSpace s = load_space(file);
  const Mask m = parse_point_set(s, set_csv);
  if (!s.is_closed_mask(m))
    throw ValidationError("set " + s.set_display(m) + " is not closed; its closure is " +
                          s.set_display(s.closure_mask(m)));
  const auto comps = irreducible_components(s, ClosedSet{s.id(), m});
  if (format == "structured") {
    Json j;
    j["components"] = Json::array();
    for (const auto& comp : comps) j["components"].push_back(s.set_id(comp.set));
    std::cout << dump_json(j);
    return 0;
  }
  if (comps.empty()) {
    emit("0 components");
    return 0;
  }
  std::string line = std::to_string(comps.size()) + " components: ";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) line += "; ";
    line += s.set_display(comps[i].set);
  }
  emit(line);
  return 0;
}

int cmd_space_complete(const std::string& file, std::string out_path) {
  const FiniteSpace s = load_space(file);
  const Completion comp = complete_space(s);
  const FiniteSpace& hat = comp.completed();
  emit("completed space: " + std::to_string(hat.size()) + " points; zariski: " +
       (is_zariski(hat) ? "true" : "false"));
  emit("embedding:");
  for (std::size_t x = 0; x < s.size(); ++x)
    emit("  " + s.name(x) + " -> " + hat.name(comp.embed_point(s, x)));
  if (out_path.empty()) out_path = file + ".completed";
  write_text_file(out_path, dump_json(space_to_json(hat)));
  emit("wrote: " + out_path);
  return 0;
}

int cmd_space_export_dot(const std::string& file, const std::string& out_path) {
  const FiniteSpace s = load_space(file);
  const std::string dot = export_dot(s);
  if (out_path.empty())
    std::cout << dot;
  else
    write_text_file(out_path, dot);
  return 0;
}

// -- dyn ----------------------------------------------------------------------

void print_limit_report(const FiniteSpace& s, const LimitMeasureReport& rep, bool backward,
                        std::optional<std::size_t> empirical_n) {
  emit("predicted: " + format_measure(s, rep.limit));
  Mask set = 0;
  for (const auto& [mask, c] : rep.limit.coefficients) set |= mask;
  emit(std::string(backward ? "alpha set: " : "limit set: ") + s.set_display(set));
  emit((backward ? "prefix length: " : "preperiod: ") + std::to_string(rep.preperiod));
  emit("period: " + std::to_string(rep.period));
  if (empirical_n)
    emit("empirical n=" + std::to_string(*empirical_n) + ": distance " +
         format_rational(rep.distance) + "; bound " + format_rational(rep.bound));
}

int cmd_dyn_orbit(const std::string& map_file, const std::string& point) {
  const LoadedMap lm = load_map(map_file);
  const OrbitSummary orbit = forward_orbit(lm.space, lm.map, lm.space.index(point));
  emit("start: " + point);
  emit("preperiod: " + std::to_string(orbit.preperiod));
  emit("period: " + std::to_string(orbit.period));
  std::string pts = "orbit:";
  for (const std::size_t x : orbit.points) pts += " " + lm.space.name(x);
  emit(pts);
  std::string cyc = "cycle:";
  for (const std::size_t x : orbit.cycle) cyc += " " + lm.space.name(x);
  emit(cyc);
  emit("omega limit: " + lm.space.set_display(omega_limit(lm.space, lm.map, orbit.start).mask));
  return 0;
}

int cmd_dyn_limit(const std::string& map_file, const std::string& point,
                  std::optional<std::size_t> empirical_n, bool complete) {
  const LoadedMap lm = load_map(map_file);
  const std::size_t x = lm.space.index(point);
  const std::size_t n = empirical_n.value_or(1000);
  if (complete) {
    const Completion comp = complete_space(lm.space);
    const ContinuousMap induced = induce_on_completion(lm.space, lm.map, comp);
    const FiniteSpace& hat = comp.completed();
    const LimitMeasureReport rep = theorem_e_limit(hat, induced, comp.embed_point(lm.space, x), n);
    emit("completion: " + std::to_string(hat.size()) + " points");
    print_limit_report(hat, rep, false, empirical_n);
  } else {
    const LimitMeasureReport rep = theorem_e_limit(lm.space, lm.map, x, n);
    print_limit_report(lm.space, rep, false, empirical_n);
  }
  return 0;
}

int cmd_dyn_reverse_limit(const std::string& map_file, const std::string& orbit_file,
                          std::optional<std::size_t> empirical_n, bool complete) {
  const LoadedMap lm = load_map(map_file);
  const ReverseOrbitSpec ro = load_reverse_orbit(orbit_file, lm.space);
  const std::size_t n = empirical_n.value_or(1000);
  if (complete) {
    const Completion comp = complete_space(lm.space);
    const ContinuousMap induced = induce_on_completion(lm.space, lm.map, comp);
    const FiniteSpace& hat = comp.completed();
    ReverseOrbitSpec lifted;
    for (const std::size_t p : ro.prefix) lifted.prefix.push_back(comp.embed_point(lm.space, p));
    for (const std::size_t p : ro.cycle) lifted.cycle.push_back(comp.embed_point(lm.space, p));
    const LimitMeasureReport rep = theorem_f_limit(hat, induced, lifted, n);
    emit("completion: " + std::to_string(hat.size()) + " points");
    print_limit_report(hat, rep, true, empirical_n);
  } else {
    const LimitMeasureReport rep = theorem_f_limit(lm.space, lm.map, ro, n);
    print_limit_report(lm.space, rep, true, empirical_n);
  }
  return 0;
}

int cmd_dyn_ergodic(const std::string& map_file, bool complete) {
  const LoadedMap lm = load_map(map_file);
  const FiniteSpace* s = &lm.space;
  const ContinuousMap* f = &lm.map;
  std::optional<Completion> comp;
  std::optional<ContinuousMap> induced;
  if (complete) {
    comp.emplace(complete_space(lm.space));
    induced.emplace(induce_on_completion(lm.space, lm.map, *comp));
    s = &comp->completed();
    f = &*induced;
  }
  const auto cycles = enumerate_cycles(*s, *f);
  emit(std::to_string(cycles.size()) + " ergodic measures:");
  for (const auto& cycle : cycles)
    emit("  cycle " + format_cycle(*s, cycle) + ": " +
         format_measure(*s, uniform_cycle_measure(*s, cycle)));
  return 0;
}

// -- dinh -----------------------------------------------------------------------

int cmd_dinh_tau(const std::string& map_file, const std::string& fn_file,
                 const std::string& point, std::optional<std::size_t> horizon) {
  const LoadedMap lm = load_map(map_file);
  const RealFunction tau = load_function(fn_file, lm.space);
  const TauProfile profile = tau_profile(lm.space, lm.map, tau);
  for (const auto& row : profile) {
    if (!point.empty() && lm.space.name(row.point) != point) continue;
    std::string line = "point " + lm.space.name(row.point) + ": tau+ " +
                       format_rational(row.plus) + "; tau- " + format_optional(row.minus);
    if (row.minus) line += "; witness cycle " + format_cycle(lm.space, row.witness_cycle);
    if (horizon) {
      line += "; tau_" + std::to_string(*horizon) + " " +
              format_rational(tau_n(lm.space, lm.map, tau, row.point, *horizon));
      line += "; tau_-" + std::to_string(*horizon) + " " +
              format_optional(tau_minus_n(lm.space, lm.map, tau, row.point, *horizon));
    }
    emit(line);
  }
  if (!point.empty() && !lm.space.has_point(point))
    throw ValidationError("unknown point \"" + point + "\"");
  return 0;
}

// -- measure ----------------------------------------------------------------------

int cmd_measure_push(const std::string& map_file, const std::string& measure_file) {
  const LoadedMap lm = load_map(map_file);
  const Measure mu = load_measure(measure_file, lm.space);
  emit("pushforward: " + format_measure(lm.space, pushforward(lm.space, lm.map, mu)));
  return 0;
}

int cmd_measure_integrate(const std::string& space_file, const std::string& measure_file,
                          const std::string& fn_file) {
  const FiniteSpace s = load_space(space_file);
  const Measure mu = load_measure(measure_file, s);
  const RealFunction f = load_function(fn_file, s);
  emit("integral: " + format_rational(integrate(s, mu, f)));
  return 0;
}

int cmd_measure_jordan(const std::string& space_file, const std::string& measure_file) {
  const FiniteSpace s = load_space(space_file);
  const Measure mu = load_measure(measure_file, s);
  const auto [plus, minus] = jordan_decompose(s, mu);
  emit("positive part: " + format_measure(s, plus));
  emit("negative part: " + format_measure(s, minus));
  emit("total variation: " + format_rational(total_variation(mu)));
  return 0;
}

// -- cofinite -----------------------------------------------------------------------

CofiniteSpace load_cofinite(const std::string& file) {
  return parse_cofinite_space_json(load_json(file), file);
}

int cmd_cofinite_info(const std::string& space_file) {
  const CofiniteSpace s = load_cofinite(space_file);
  switch (s.card) {
    case Cardinality::Finite:
      emit("carrier: finite (" + std::to_string(s.finite_size) + " points)");
      break;
    case Cardinality::CountablyInfinite:
      emit(s.named_integers ? "carrier: integers" : "carrier: countably infinite");
      break;
    case Cardinality::Uncountable:
      emit("carrier: uncountable");
      break;
  }
  const auto sig = sigma_irreducible_closeds(s);
  emit(std::string("sigma-irreducible closeds: singletons") +
       (sig.whole_space ? " and the whole space" : ""));
  emit(std::string("complete: ") + (is_complete(s) ? "true" : "false"));
  return 0;
}

int cmd_cofinite_delta(const std::string& space_file, const std::string& set_file) {
  const CofiniteSpace s = load_cofinite(space_file);
  const SymbolicSet a = parse_symbolic_set_json(load_json(set_file), set_file);
  emit("delta_Y(" + format_symbolic(a) + ") = " + format_rational(delta_Y(s, a)));
  return 0;
}

int cmd_cofinite_classify(const std::string& space_file, const std::string& set_file) {
  const CofiniteSpace s = load_cofinite(space_file);
  const SymbolicSet a = parse_symbolic_set_json(load_json(set_file), set_file);
  emit(std::string("intersection with the whole-space atom: ") +
       intersection_type_name(classify_against_whole_space(s, a)));
  return 0;
}

int cmd_cofinite_lambda_gap(const std::string& space_file) {
  const LambdaGapWitness w = lambda_gap_witness(load_cofinite(space_file));
  emit("phi(1) = " + format_rational(w.phi_of_one));
  emit("phi(chi_x) = " + format_rational(w.phi_of_point_char) + " for every point x");
  emit("recovered measure: total mass " + format_rational(w.recovered_total_mass));
  emit("gap: " + format_rational(w.gap));
  emit(std::string("contradiction: ") + (w.contradiction ? "certified" : "absent"));
  return 0;
}

int cmd_cofinite_shift_report(const std::string& space_file) {
  const ShiftDynamicsReport r = shift_dynamics_report(load_cofinite(space_file));
  emit(std::string("continuous: ") + (r.continuous ? "true" : "false"));
  emit(std::string("surjective: ") + (r.surjective ? "true" : "false"));
  emit(std::string("injective: ") + (r.injective ? "true" : "false"));
  emit("periodic points: " + std::to_string(r.periodic_point_count));
  emit("ergodic measures on the base: " + std::to_string(r.base_ergodic_count));
  emit("ergodic measures on the completion: " + std::to_string(r.completion_ergodic_count));
  emit("completion atom: " + r.completion_atom);
  return 0;
}

// -- verify -------------------------------------------------------------------------

int cmd_verify(VerifyOptions opts, const std::string& format) {
  opts.seed = effective_seed(opts.seed);
  const VerificationReport report = run_verification(opts);
  if (format == "structured") {
    Json j;
    j["properties"] = Json::array();
    for (const auto& p : report.properties) {
      Json row;
      row["name"] = p.name;
      row["passed"] = p.passed;
      row["cases"] = p.cases_run;
      if (!p.passed) {
        row["detail"] = p.detail;
        if (!p.witness_path.empty()) row["witness"] = p.witness_path;
      }
      j["properties"].push_back(std::move(row));
    }
    j["all_passed"] = report.all_passed();
    std::cout << dump_json(j);
  } else {
    std::size_t passed = 0;
    for (const auto& p : report.properties) {
      if (p.passed) {
        emit("PASS " + p.name + " (" + std::to_string(p.cases_run) + " cases)");
        ++passed;
      } else {
        std::string line = "FAIL " + p.name + " (case " + std::to_string(p.cases_run) + "): " +
                           p.detail;
        if (!p.witness_path.empty()) line += " [witness: " + p.witness_path + "]";
        emit(line);
      }
    }
    emit(std::to_string(report.properties.size()) + " properties: " + std::to_string(passed) +
         " passed, " + std::to_string(report.properties.size() - passed) + " failed");
  }
  for (const auto& p : report.properties)
    std::cerr << "timing " << p.name << ": " << p.seconds << "s\n";
  return report.all_passed() ? 0 : 2;
}

// -- gen ----------------------------------------------------------------------------

void write_or_print(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

int cmd_gen_space(std::uint64_t seed, std::size_t points, const std::string& out) {
  SplitMix64 rng(effective_seed(seed));
  write_or_print(out, dump_json(space_to_json(gen::space(rng, points))));
  return 0;
}

int cmd_gen_map(std::uint64_t seed, const std::string& space_file, const std::string& out) {
  const FiniteSpace s = load_space(space_file);
  SplitMix64 rng(effective_seed(seed));
  const ContinuousMap f = gen::map(rng, s);
  write_or_print(out, dump_json(map_to_json(s, f, space_file)));
  return 0;
}

int cmd_gen_measure(std::uint64_t seed, const std::string& space_file, const std::string& tv,
                    std::size_t atoms, bool positive, const std::string& out) {
  const FiniteSpace s = load_space(space_file);
  SplitMix64 rng(effective_seed(seed));
  const Measure mu = gen::measure(rng, s, atoms, parse_rational(tv), positive);
  write_or_print(out, dump_json(measure_to_json(s, mu)));
  return 0;
}

int cmd_gen_function(std::uint64_t seed, const std::string& space_file, bool usc,
                     const std::string& out) {
  const FiniteSpace s = load_space(space_file);
  SplitMix64 rng(effective_seed(seed));
  const RealFunction f = usc ? gen::usc_function(rng, s) : gen::sc_function(rng, s);
  write_or_print(out, dump_json(function_to_json(s, f)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact measures and discrete dynamics on finite topological spaces"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured", "dot"}));

  // space
  auto* space = app.add_subcommand("space", "topology commands")->require_subcommand(1);
  std::string space_file, set_csv, out_path;
  auto* sc_check = space->add_subcommand("check", "validate a space file");
  sc_check->add_option("file", space_file)->required();
  auto* sc_comp = space->add_subcommand("components", "irreducible components of a closed set");
  sc_comp->add_option("file", space_file)->required();
  sc_comp->add_option("--set", set_csv, "comma-separated point names");
  auto* sc_complete = space->add_subcommand("complete", "sobrification");
  sc_complete->add_option("file", space_file)->required();
  sc_complete->add_option("--out", out_path, "output space file");
  auto* sc_dot = space->add_subcommand("export-dot", "covering relation as DOT");
  sc_dot->add_option("file", space_file)->required();
  sc_dot->add_option("--out", out_path, "output DOT file");

  // dyn
  auto* dyn = app.add_subcommand("dyn", "dynamics commands")->require_subcommand(1);
  std::string map_file, point, orbit_file;
  std::optional<std::size_t> empirical;
  bool complete_flag = false;
  auto* dyn_orbit = dyn->add_subcommand("orbit", "forward orbit summary");
  dyn_orbit->add_option("map", map_file)->required();
  dyn_orbit->add_option("--point", point)->required();
  auto* dyn_limit = dyn->add_subcommand("limit", "forward equidistribution report");
  dyn_limit->add_option("map", map_file)->required();
  dyn_limit->add_option("--point", point)->required();
  dyn_limit->add_option("--empirical", empirical, "empirical horizon n");
  dyn_limit->add_flag("--complete", complete_flag, "route through the completion");
  auto* dyn_rev = dyn->add_subcommand("reverse-limit", "backward equidistribution report");
  dyn_rev->add_option("map", map_file)->required();
  dyn_rev->add_option("--orbit", orbit_file, "reverse orbit file")->required();
  dyn_rev->add_option("--empirical", empirical, "empirical horizon n");
  dyn_rev->add_flag("--complete", complete_flag, "route through the completion");
  auto* dyn_erg = dyn->add_subcommand("ergodic", "ergodic measures");
  dyn_erg->add_option("map", map_file)->required();
  dyn_erg->add_flag("--complete", complete_flag, "route through the completion");

  // dinh
  auto* dinh = app.add_subcommand("dinh", "growth rate commands")->require_subcommand(1);
  std::string fn_file;
  std::optional<std::size_t> horizon;
  auto* dinh_tau = dinh->add_subcommand("tau", "forward and backward rates");
  dinh_tau->add_option("--map", map_file)->required();
  dinh_tau->add_option("--function", fn_file)->required();
  dinh_tau->add_option("--point", point, "restrict to one point");
  dinh_tau->add_option("--horizon", horizon, "also report finite-horizon sums");

  // measure
  auto* measure = app.add_subcommand("measure", "measure commands")->require_subcommand(1);
  std::string measure_file;
  auto* m_push = measure->add_subcommand("push", "pushforward along a map");
  m_push->add_option("--map", map_file)->required();
  m_push->add_option("--measure", measure_file)->required();
  auto* m_int = measure->add_subcommand("integrate", "integrate an SC function");
  m_int->add_option("--space", space_file)->required();
  m_int->add_option("--measure", measure_file)->required();
  m_int->add_option("--function", fn_file)->required();
  auto* m_jordan = measure->add_subcommand("jordan", "jordan decomposition");
  m_jordan->add_option("--space", space_file)->required();
  m_jordan->add_option("--measure", measure_file)->required();

  // cofinite
  auto* cof = app.add_subcommand("cofinite", "symbolic cofinite commands")->require_subcommand(1);
  std::string cof_space, cof_set;
  auto* cof_info = cof->add_subcommand("info", "carrier report");
  cof_info->add_option("--space", cof_space)->required();
  auto* cof_delta = cof->add_subcommand("delta", "generic mass of a descriptor");
  cof_delta->add_option("--space", cof_space)->required();
  cof_delta->add_option("--set", cof_set)->required();
  auto* cof_classify = cof->add_subcommand("classify", "intersection type with the whole space");
  cof_classify->add_option("--space", cof_space)->required();
  cof_classify->add_option("--set", cof_set)->required();
  auto* cof_gap = cof->add_subcommand("lambda-gap", "representation gap certificate");
  cof_gap->add_option("--space", cof_space)->required();
  auto* cof_shift = cof->add_subcommand("shift-report", "successor shift dynamics");
  cof_shift->add_option("--space", cof_space)->required();

  // verify
  VerifyOptions vopts;
  auto* verify = app.add_subcommand("verify", "run the property batteries");
  verify->add_option("--seed", vopts.seed, "RNG seed");
  verify->add_option("--cases", vopts.cases, "cases per property");
  verify->add_option("--max-points", vopts.max_points, "max points per random space");
  verify->add_option("--only", vopts.only, "run properties with this prefix");
  verify->add_option("--witness-dir", vopts.witness_dir, "directory for failure witnesses");
  verify->add_option("--mutant", vopts.mutant, "inject a named fault")->group("");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "seeded instance generation")->require_subcommand(1);
  std::uint64_t seed = 20260814;
  std::size_t points = 6, atoms = 3;
  std::string tv_bound = "1";
  bool positive = false, usc = false;
  auto* g_space = gen_cmd->add_subcommand("space", "random preorder");
  g_space->add_option("--points", points);
  g_space->add_option("--seed", seed);
  g_space->add_option("--out", out_path);
  auto* g_map = gen_cmd->add_subcommand("map", "random continuous self-map");
  g_map->add_option("--space", space_file)->required();
  g_map->add_option("--seed", seed);
  g_map->add_option("--out", out_path);
  auto* g_measure = gen_cmd->add_subcommand("measure", "random measure");
  g_measure->add_option("--space", space_file)->required();
  g_measure->add_option("--seed", seed);
  g_measure->add_option("--tv-bound", tv_bound);
  g_measure->add_option("--atoms", atoms);
  g_measure->add_flag("--positive", positive);
  g_measure->add_option("--out", out_path);
  auto* g_function = gen_cmd->add_subcommand("function", "random SC or USC function");
  g_function->add_option("--space", space_file)->required();
  g_function->add_option("--seed", seed);
  g_function->add_flag("--usc", usc);
  g_function->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sc_check->parsed()) return cmd_space_check(space_file, format);
    if (sc_comp->parsed()) return cmd_space_components(space_file, set_csv, format);
    if (sc_complete->parsed()) return cmd_space_complete(space_file, out_path);
    if (sc_dot->parsed()) return cmd_space_export_dot(space_file, out_path);
    if (dyn_orbit->parsed()) return cmd_dyn_orbit(map_file, point);
    if (dyn_limit->parsed()) return cmd_dyn_limit(map_file, point, empirical, complete_flag);
    if (dyn_rev->parsed())
      return cmd_dyn_reverse_limit(map_file, orbit_file, empirical, complete_flag);
    if (dyn_erg->parsed()) return cmd_dyn_ergodic(map_file, complete_flag);
    if (dinh_tau->parsed()) return cmd_dinh_tau(map_file, fn_file, point, horizon);
    if (m_push->parsed()) return cmd_measure_push(map_file, measure_file);
    if (m_int->parsed()) return cmd_measure_integrate(space_file, measure_file, fn_file);
    if (m_jordan->parsed()) return cmd_measure_jordan(space_file, measure_file);
    if (cof_info->parsed()) return cmd_cofinite_info(cof_space);
    if (cof_delta->parsed()) return cmd_cofinite_delta(cof_space, cof_set);
    if (cof_classify->parsed()) return cmd_cofinite_classify(cof_space, cof_set);
    if (cof_gap->parsed()) return cmd_cofinite_lambda_gap(cof_space);
    if (cof_shift->parsed()) return cmd_cofinite_shift_report(cof_space);
    if (verify->parsed()) return cmd_verify(vopts, format);
    if (g_space->parsed()) return cmd_gen_space(seed, points, out_path);
    if (g_map->parsed()) return cmd_gen_map(seed, space_file, out_path);
    if (g_measure->parsed()) return cmd_gen_measure(seed, space_file, tv_bound, atoms, positive, out_path);
    if (g_function->parsed()) return cmd_gen_function(seed, space_file, usc, out_path);
  } catch (const noeth::UndefinedResultError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const noeth::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no command\n";
  return 1;
}
