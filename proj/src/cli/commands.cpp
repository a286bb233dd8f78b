#include "affrig/cli.hpp"

#include <sstream>

#include "affrig/rigidity.hpp"

namespace affrig::cli {
namespace {

std::string field_name(const JobConfig& c) { return c.field.is_rationals() ? "Q" : "F_" + std::to_string(c.field.p()); }

Json header(const char* command, const JobConfig& c) {
  return Json{{"command", command}, {"status", "ok"}, {"field", field_name(c)}, {"dim", c.dim}};
}

void require_fp(const JobConfig& c) {
  if (!c.field.is_prime_field()) throw InvalidInput("this command needs an Fp field");
}

SpacePtr finite_model(const JobConfig& c, const Options& o) {
  require_fp(c);
  std::size_t points = 1;
  for (std::size_t i = 0; i < c.dim; ++i) {
    points *= c.field.p();
    if (points > o.cap) {
      throw InvalidInput("p^n exceeds --cap " + std::to_string(o.cap));
    }
  }
  return make_space(c.dual_pair());
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.budget = o.budget;
  s.seed = o.seed;
  return s;
}

Json pair_json(const MemberPair& m) { return Json::array({m.x, m.y}); }

/// A vector in perp(L(X)) outside L(Y) for thin pairs, in L(Y) outside
/// perp(L(X)) for thick ones.
std::optional<Vector> witness(const DualPair& dp, const AffineSubspace& x, const AffineSubspace& y, PairClass cls) {
  const LinearSubspace px = perp(dp, x.linear(), Side::E);
  if (cls == PairClass::Thin) {
    for (const auto& v : px.basis()) {
      if (!y.linear().contains(v)) return v;
    }
  } else if (cls == PairClass::Thick) {
    for (const auto& v : y.linear().basis()) {
      if (!px.contains(v)) return v;
    }
  }
  return std::nullopt;
}

Json classification(const JobConfig& c) {
  const DualPair dp = c.dual_pair();
  const auto classes = classify_all(dp, c.xs, c.ys);
  Json matrix = Json::array();
  Json pairs = Json::array();
  Json perfect = Json::array();
  Json thick = Json::array();
  for (std::size_t i = 0; i < c.xs.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < c.ys.size(); ++j) {
      const PairClass cls = classes[i][j];
      row.push_back(to_string(cls));
      Json entry{{"x", i}, {"y", j}, {"class", to_string(cls)}};
      if (const auto w = witness(dp, c.xs[i], c.ys[j], cls)) entry["witness"] = vector_to_json(*w);
      pairs.push_back(entry);
      if (cls == PairClass::Perfect) perfect.push_back(Json::array({i, j}));
      if (cls == PairClass::Thick) thick.push_back(Json::array({i, j}));
    }
    matrix.push_back(row);
  }
  return Json{{"classes", matrix}, {"pairs", pairs}, {"perfect_pairs", perfect}, {"thick_pairs", thick}};
}

void require_no_thick(const JobConfig& c) {
  if (const auto t = has_thick_pair(c.dual_pair(), c.xs, c.ys)) throw ThickPairPresent(t->x, t->y);
}

Json level_json(const PlanLevel& level, std::size_t k) {
  const Dec2Plan& d = level.dec2;
  Json family = Json::array();
  for (const auto& u : d.family.u) family.push_back(vector_to_json(u));
  Json constants = Json::array();
  for (const auto& t : d.targets) constants.push_back(scalar_to_json(t.c));
  Json meet = Json::array();
  for (const auto& m : d.meet.members()) meet.push_back(affine_to_json(m));
  return Json{{"level", k},
              {"active_x", level.xs},
              {"active_y", level.ys},
              {"x0", linear_to_json(d.blocks.x0)},
              {"y0", linear_to_json(d.blocks.y0)},
              {"xs0", level.xs0},
              {"ys0", level.ys0},
              {"family", family},
              {"constants", constants},
              {"c0", scalar_to_json(d.c0)},
              {"meet", meet},
              {"search_nodes", d.search_nodes}};
}

Json transcript_json(const DecompositionPlan& plan) {
  Json levels = Json::array();
  for (std::size_t k = 0; k < plan.levels.size(); ++k) levels.push_back(level_json(plan.levels[k], k));
  return levels;
}

Json components_json(const DecompositionResult& r, const DecompositionPlan& plan) {
  const SpacePtr& sp = r.input.space();
  Json out = Json::array();
  for (std::size_t k = 0; k < r.components.size(); ++k) {
    const PairComponent& c = r.components[k];
    const AffineSubspace& x = plan.xs[c.x];
    const AffineSubspace& y = plan.ys[c.y];
    out.push_back({{"x", c.x},
                   {"y", c.y},
                   {"y0", point_to_json(sp->to_point(y.base()))},
                   {"coefficient", scalar_to_json(r.mu_coefficients[k])},
                   {"support_in_x", c.d.supported_in(sp->indicator(x))},
                   {"fourier_support_in_y", fourier(c.d).supported_in(sp->indicator(y))},
                   {"distribution", distribution_to_json(c.d)}});
  }
  return out;
}

Json error_report(const std::string& command, const char* kind, const std::string& message) {
  return Json{{"command", command}, {"status", "error"}, {"error", {{"kind", kind}, {"message", message}}}};
}

// ---- text rendering -------------------------------------------------------

std::string str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string rational_text(std::string c) {
  if (c.size() > 2 && c.compare(c.size() - 2, 2, "/1") == 0) c.resize(c.size() - 2);
  return c;
}

std::string scalar_text(const Json& j) {
  if (!j.is_array()) return rational_text(str(j));
  // Power-basis coordinates of Q(zeta_p).
  std::string out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string c = rational_text(str(j[k]));
    if (c == "0") continue;
    if (!out.empty()) out += c[0] == '-' ? " - " : " + ";
    else if (c[0] == '-') out += "-";
    if (c[0] == '-') c.erase(0, 1);
    if (k == 0) out += c;
    else out += (c == "1" ? "" : c + "*") + (k == 1 ? std::string("z") : "z^" + std::to_string(k));
  }
  return out.empty() ? "0" : out;
}

std::string factor_text(const Json& j) {
  const std::string s = scalar_text(j);
  return s.find(' ') == std::string::npos ? s : "(" + s + ")";
}

std::string vec_text(const Json& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + scalar_text(v[i]);
  return out + ")";
}

std::string span_text(const Json& gens) {
  if (gens.empty()) return "{0}";
  std::string out = "span";
  for (const auto& g : gens) out += " " + vec_text(g);
  return out;
}

std::string affine_text(const Json& a) { return vec_text(a["base"]) + " + " + span_text(a["gens"]); }

std::string pairs_text(const Json& pairs) {
  if (pairs.empty()) return "none";
  std::string out;
  for (const auto& p : pairs) out += (out.empty() ? "" : " ") + ("(X" + str(p[0]) + ",Y" + str(p[1]) + ")");
  return out;
}

void classify_text(std::ostream& os, const Json& r) {
  const Json& m = r["classes"];
  os << "classes (rows X, columns Y):\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << "  X" << i << ":";
    for (const auto& c : m[i]) os << " " << str(c);
    os << "\n";
  }
  for (const auto& p : r["pairs"]) {
    if (!p.contains("witness")) continue;
    os << "  (X" << str(p["x"]) << ",Y" << str(p["y"]) << ") " << str(p["class"]) << ", witness "
       << vec_text(p["witness"])
       << (p["class"] == to_string(PairClass::Thin) ? " in perp L(X), not in L(Y)\n" : " in L(Y), not in perp L(X)\n");
  }
  os << "perfect pairs: " << pairs_text(r["perfect_pairs"]) << "\n";
  os << "thick pairs: " << pairs_text(r["thick_pairs"]) << "\n";
}

void distribution_text(std::ostream& os, const Json& d, const char* indent) {
  for (const auto& e : d["entries"]) os << indent << str(e["point"]) << " -> " << scalar_text(e["value"]) << "\n";
}

void transcript_text(std::ostream& os, const Json& levels) {
  for (const auto& l : levels) {
    os << "level " << str(l["level"]) << ": X0 = " << span_text(l["x0"]) << ", Y0 = " << span_text(l["y0"]) << "\n";
    os << "  block X " << str(l["xs0"]) << ", block Y " << str(l["ys0"]) << ", active X " << str(l["active_x"])
       << ", active Y " << str(l["active_y"]) << "\n";
    os << "  family:";
    if (l["family"].empty()) os << " (empty)";
    for (std::size_t k = 0; k < l["family"].size(); ++k) {
      os << " u=" << vec_text(l["family"][k]) << " c=" << scalar_text(l["constants"][k]) << ";";
    }
    os << "\n  c0 = " << scalar_text(l["c0"]) << ", search nodes " << str(l["search_nodes"]) << ", meet "
       << l["meet"].size() << " subspaces\n";
  }
}

void components_text(std::ostream& os, const Json& comps) {
  for (const auto& c : comps) {
    os << "  component (X" << str(c["x"]) << ",Y" << str(c["y"]) << ") = " << factor_text(c["coefficient"])
       << " * mu(X" << str(c["x"]) << ", " << str(c["y0"]) << "), support in X: " << str(c["support_in_x"])
       << ", Fourier support in Y: " << str(c["fourier_support_in_y"]) << "\n";
  }
}

void error_text(std::ostream& os, const Json& e) {
  os << "error (" << str(e["kind"]) << "): " << str(e["message"]) << "\n";
  if (e.contains("witness")) {
    const Json& w = e["witness"];
    os << "  thick pair (X" << str(w["x"]) << ",Y" << str(w["y"]) << "): " << affine_text(w["X"]) << " against "
       << affine_text(w["Y"]) << "\n";
  }
  if (e.contains("exhausted")) {
    os << "  " << (e.contains("p") ? "p = " + str(e["p"]) + ", " : std::string()) << "candidate space " << (e["exhausted"].get<bool>() ? "exhausted" : "not exhausted")
       << "\n";
  }
}

}  // namespace

Outcome cmd_classify(const JobConfig& c, const Options&) {
  Json r = header("classify", c);
  r.update(classification(c));
  return {kSuccess, r};
}

Outcome cmd_check(const JobConfig& c, const Options&) {
  require_fp(c);
  require_no_thick(c);
  Json r = header("check", c);
  const auto perfect = perfect_pairs(c.dual_pair(), c.xs, c.ys);
  Json pairs = Json::array();
  for (const auto& m : perfect) pairs.push_back(pair_json(m));
  r["admissible"] = true;
  r["perfect_pairs"] = pairs;
  r["predicted_dimension"] = perfect.size();
  return {kSuccess, r};
}

Outcome cmd_dim(const JobConfig& c, const Options& o) {
  const SpacePtr sp = finite_model(c, o);
  const SpaceBasis b = space_basis(sp, c.xs, c.ys);
  Json r = header("dim", c);
  r["points"] = sp->size();
  r["dimension"] = b.dimension;
  r["parametrization"] = b.parametrization;
  const bool admissible = !has_thick_pair(c.dual_pair(), c.xs, c.ys).has_value();
  r["admissible"] = admissible;
  if (admissible) {
    const std::size_t predicted = perfect_pairs(c.dual_pair(), c.xs, c.ys).size();
    r["predicted_dimension"] = predicted;
    r["matches_prediction"] = predicted == b.dimension;
  }
  if (o.basis) {
    Json basis = Json::array();
    for (const auto& d : b.basis) basis.push_back(distribution_to_json(d));
    r["basis"] = basis;
  }
  return {kSuccess, r};
}

Outcome cmd_decompose(const JobConfig& c, const Options& o) {
  const SpacePtr sp = finite_model(c, o);
  const Distribution d = config_distribution(c, sp);
  if (!in_space(d, c.xs, c.ys)) {
    throw InvalidInput("the distribution is not supported in the union of X with Fourier support in the union of Y");
  }
  const DecompositionPlan plan = plan_decomposition(sp, c.xs, c.ys, search_options(o));
  const DecompositionResult res = apply_plan(d, plan);
  Json r = header("decompose", c);
  r["input"] = distribution_to_json(d);
  r["transcript"] = transcript_json(plan);
  r["components"] = components_json(res, plan);
  r["residual_zero"] = res.residual.is_zero();
  return {kSuccess, r};
}

Outcome cmd_family(const JobConfig& c, const Options& o) {
  const DualPair dp = c.dual_pair();
  const SearchOptions so = search_options(o);
  const FamilySearch s = c.x1 ? find_avoiding_family(dp, c.ys, c.xs, *c.x1, so)
                              : find_avoiding_family(dp, c.ys, c.xs.members(), so);
  Json r = header("family", c);
  r["mode"] = c.field.is_rationals() ? "Q" : "Fp";
  r["nodes"] = s.nodes;
  r["exhausted"] = s.exhausted;
  r["sampled"] = s.sampled;
  if (c.field.is_rationals()) r["radius"] = s.radius;
  if (!s.family) {
    r["status"] = "error";
    r["error"] = {{"kind", "NotFound"},
                  {"message", "no avoiding family found"},
                  {"exhausted", s.exhausted}};
    if (c.field.is_prime_field()) r["error"]["p"] = c.field.p();
    return {kFamilyFailed, r};
  }
  Json forbidden = Json::array();
  for (const auto& f : s.family->forbidden) forbidden.push_back(affine_to_json(f));
  Json family = Json::array();
  for (const auto& u : s.family->u) family.push_back(vector_to_json(u));
  r["forbidden"] = forbidden;
  r["family"] = family;
  r["m"] = s.family->m;
  r["verified"] = verify_family(dp, c.ys, *s.family);
  r["checked_sums"] = (std::uint64_t{1} << s.family->u.size()) - 1;
  return {kSuccess, r};
}

JobConfig demo_config(const std::string& name) {
  JobConfig c;
  auto build = [&c](std::uint32_t p, std::size_t n, const std::vector<std::vector<long long>>& b) {
    c.field = p == 0 ? FieldDescriptor::rationals() : FieldDescriptor::prime_field(p);
    c.dim = n;
    std::vector<Vector> rows;
    for (const auto& r : b) rows.push_back(integer_vector(c.field, r));
    c.pairing = ExactMatrix::from_rows(c.field, n, rows);
  };
  auto member = [&c](Side s, std::vector<long long> base, const std::vector<std::vector<long long>>& gens) {
    std::vector<Vector> vs;
    for (const auto& g : gens) vs.push_back(integer_vector(c.field, g));
    return AffineSubspace(s, integer_vector(c.field, base), linear_span(c.field, c.dim, vs));
  };
  if (name == "quadratic") {
    // F+ = span(e1), F- = span(e2), F0 = span(e3, e4).
    build(0, 4, {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    const auto plus = [&](Side s) { return member(s, {0, 0, 0, 0}, {{1, 0, 0, 0}}); };
    const auto plus0 = [&](Side s) { return member(s, {0, 0, 0, 0}, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}); };
    c.xs = Arrangement(Side::E, c.field, 4, {plus(Side::E), plus0(Side::E)});
    c.ys = Arrangement(Side::F, c.field, 4, {plus(Side::F), plus0(Side::F)});
    return c;
  }
  if (name == "rigidity-tour") {
    build(5, 2, {{1, 0}, {0, 1}});
    c.xs = Arrangement(Side::E, c.field, 2,
                       {member(Side::E, {0, 0}, {{1, 0}}), member(Side::E, {0, 1}, {{1, 0}}),
                        member(Side::E, {1, 0}, {{1, 4}})});
    c.ys = Arrangement(Side::F, c.field, 2,
                       {member(Side::F, {0, 0}, {{0, 1}}), member(Side::F, {1, 0}, {{0, 1}}),
                        member(Side::F, {0, 0}, {{1, 1}})});
    return c;
  }
  throw InvalidInput("unknown demo \"" + name + "\" (expected quadratic or rigidity-tour)");
}

Outcome cmd_demo(const std::string& name, const Options& o) {
  const JobConfig c = demo_config(name);
  Json r = header("demo", c);
  r["demo"] = name;
  r["config"] = config_to_json(c);
  if (name == "quadratic") {
    const auto classes = classify_all(c.dual_pair(), c.xs, c.ys);
    struct Named {
      const char* label;
      std::size_t x, y;
      PairClass expected;
    };
    const Named named[] = {{"(F+, F+)", 0, 0, PairClass::Thin},
                           {"(F+ + F0, F+)", 1, 0, PairClass::Perfect},
                           {"(F+ + F0, F+ + F0)", 1, 1, PairClass::Thick}};
    Json pairs = Json::array();
    bool all = true;
    for (const auto& n : named) {
      const bool ok = classes[n.x][n.y] == n.expected;
      all = all && ok;
      pairs.push_back({{"pair", n.label},
                       {"class", to_string(classes[n.x][n.y])},
                       {"expected", to_string(n.expected)},
                       {"matches", ok}});
    }
    r["pairs"] = pairs;
    r["matches"] = all;
    return {kSuccess, r};
  }

  const SpacePtr sp = finite_model(c, o);
  r["classification"] = classification(c);
  require_no_thick(c);
  const SpaceBasis b = space_basis(sp, c.xs, c.ys);
  r["dimension"] = b.dimension;
  r["predicted_dimension"] = perfect_pairs(c.dual_pair(), c.xs, c.ys).size();
  const DecompositionPlan plan = plan_decomposition(sp, c.xs, c.ys, search_options(o));
  r["transcript"] = transcript_json(plan);
  Json runs = Json::array();
  bool all_zero = true;
  for (std::size_t k = 0; k < b.basis.size(); ++k) {
    const DecompositionResult res = apply_plan(b.basis[k], plan);
    all_zero = all_zero && res.residual.is_zero();
    runs.push_back({{"basis_index", k},
                    {"input", distribution_to_json(b.basis[k])},
                    {"components", components_json(res, plan)},
                    {"residual_zero", res.residual.is_zero()}});
  }
  r["decompositions"] = runs;
  r["residual_zero"] = all_zero;
  return {kSuccess, r};
}

Outcome run_command(const std::string& command, const std::string& argument, const Options& options) {
  std::optional<JobConfig> config;
  try {
    if (command == "demo") return cmd_demo(argument, options);
    config = parse_config_text(argument);
    if (command == "classify") return cmd_classify(*config, options);
    if (command == "check") return cmd_check(*config, options);
    if (command == "dim") return cmd_dim(*config, options);
    if (command == "decompose") return cmd_decompose(*config, options);
    if (command == "family") return cmd_family(*config, options);
    return {kInvalidInput, error_report(command, "InvalidInput", "unknown command \"" + command + "\"")};
  } catch (const ThickPairPresent& e) {
    Json r = error_report(command, "ThickPairPresent", e.what());
    const JobConfig c = config ? *config : demo_config(argument);
    r["error"]["witness"] = {{"x", e.x_index()},
                             {"y", e.y_index()},
                             {"X", affine_to_json(c.xs[e.x_index()])},
                             {"Y", affine_to_json(c.ys[e.y_index()])}};
    return {kThickPair, r};
  } catch (const ModelTooSmall& e) {
    Json r = error_report(command, "ModelTooSmall", e.what());
    r["error"]["p"] = e.p();
    r["error"]["exhausted"] = e.exhausted();
    return {kFamilyFailed, r};
  } catch (const SupportViolation& e) {
    // Raised only after the input passed its own support check: the finite
    // model is too small for the theorem at this p.
    Json r = error_report(command, "SupportViolation", e.what());
    if (config && config->field.is_prime_field()) r["error"]["p"] = config->field.p();
    return {kFamilyFailed, r};
  } catch (const InvalidInput& e) {
    return {kInvalidInput, error_report(command, "InvalidInput", e.what())};
  } catch (const DimensionMismatch& e) {
    return {kInvalidInput, error_report(command, "InvalidInput", e.what())};
  } catch (const DescriptorMismatch& e) {
    return {kInvalidInput, error_report(command, "InvalidInput", e.what())};
  }
}

std::string render_text(const Json& r) {
  std::ostringstream os;
  const std::string command = str(r.value("command", Json("")));
  if (r.value("status", "") == "error") {
    error_text(os, r["error"]);
    if (r.contains("nodes")) os << "  search nodes " << str(r["nodes"]) << "\n";
    return os.str();
  }
  if (r.contains("field")) os << command << " over " << str(r["field"]) << "^" << str(r["dim"]) << "\n";
  if (command == "decompose" || (command == "demo" && r["demo"] != "quadratic")) {
    os << "values in Q(z), z a primitive root of unity of order " << str(r["field"]).substr(2) << "\n";
  }
  if (command == "classify") {
    classify_text(os, r);
  } else if (command == "check") {
    os << "no thick pair; perfect pairs: " << pairs_text(r["perfect_pairs"]) << "\n";
    os << "predicted dimension: " << str(r["predicted_dimension"]) << "\n";
  } else if (command == "dim") {
    os << "points: " << str(r["points"]) << "\n";
    os << "dimension: " << str(r["dimension"]) << " (solved over the " << str(r["parametrization"]) << ")\n";
    if (r.contains("predicted_dimension")) {
      os << "predicted dimension: " << str(r["predicted_dimension"])
         << (r["matches_prediction"].get<bool>() ? " (matches)\n" : " (differs)\n");
    } else {
      os << "thick pair present; no prediction\n";
    }
    if (r.contains("basis")) {
      for (std::size_t k = 0; k < r["basis"].size(); ++k) {
        os << "basis[" << k << "]:\n";
        distribution_text(os, r["basis"][k], "  ");
      }
    }
  } else if (command == "decompose") {
    transcript_text(os, r["transcript"]);
    components_text(os, r["components"]);
    os << "residual zero: " << str(r["residual_zero"]) << "\n";
  } else if (command == "family") {
    os << "family (m = " << str(r["m"]) << "):";
    if (r["family"].empty()) os << " (empty)";
    for (const auto& u : r["family"]) os << " " << vec_text(u);
    os << "\nforbidden:";
    if (r["forbidden"].empty()) os << " (none)";
    for (const auto& f : r["forbidden"]) os << " [" << affine_text(f) << "]";
    os << "\nchecked " << str(r["checked_sums"]) << " nonzero sums, verified " << str(r["verified"]) << ", nodes "
       << str(r["nodes"]) << (r["sampled"].get<bool>() ? ", found by sampling" : "");
    if (r.contains("radius")) os << ", grid radius " << str(r["radius"]);
    os << "\n";
  } else if (command == "demo" && r["demo"] == "quadratic") {
    for (const auto& p : r["pairs"]) {
      os << "  " << str(p["pair"]) << ": " << str(p["class"]) << " (expected " << str(p["expected"]) << ")\n";
    }
    os << "all match: " << str(r["matches"]) << "\n";
  } else if (command == "demo") {
    os << "step 1, classification\n";
    classify_text(os, r["classification"]);
    os << "step 2, oracle dimension " << str(r["dimension"]) << ", perfect pairs " << str(r["predicted_dimension"])
       << "\nstep 3, induction plan\n";
    transcript_text(os, r["transcript"]);
    os << "step 4, decomposition of each basis vector\n";
    for (const auto& run : r["decompositions"]) {
      os << " basis[" << str(run["basis_index"]) << "]\n";
      components_text(os, run["components"]);
    }
    os << "residual zero: " << str(r["residual_zero"]) << "\n";
  }
  return os.str();
}

std::string render(const Outcome& outcome, Format format) {
  return format == Format::Json ? outcome.report.dump(2) + "\n" : render_text(outcome.report);
}

}  // namespace affrig::cli
