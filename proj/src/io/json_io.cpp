#include "affrig/io.hpp"

namespace affrig {
namespace {

[[noreturn]] void fail(const std::string& what) { throw InvalidInput("input: " + what); }

const Json& member(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) fail(std::string("missing \"") + key + "\"");
  return obj.at(key);
}

mpq_class parse_rational(const Json& j) {
  if (j.is_number_integer()) return mpq_class(mpz_class(j.dump()));
  if (!j.is_string()) fail("expected a rational string or integer, got " + j.dump());
  const std::string s = j.get<std::string>();
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) fail("malformed rational \"" + s + "\"");
  if (q.get_den() == 0) fail("zero denominator in \"" + s + "\"");
  q.canonicalize();
  return q;
}

std::string rational_string(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

FieldDescriptor parse_field(const Json& j) {
  const Json& kind = member(j, "kind");
  if (kind == "Q") return FieldDescriptor::rationals();
  if (kind != "Fp") fail("field kind must be \"Q\" or \"Fp\"");
  const Json& p = member(j, "p");
  if (!p.is_number_unsigned() || p.get<std::uint64_t>() > 1000000) fail("p must be a small positive integer");
  const auto value = p.get<std::uint32_t>();
  if (!is_prime(value)) fail("p = " + std::to_string(value) + " is not prime");
  return FieldDescriptor::prime_field(value);
}

AffineSubspace parse_member(const FieldDescriptor& f, std::size_t n, Side side, const Json& j) {
  const Vector base = vector_from_json(f, n, member(j, "base"));
  std::vector<Vector> gens;
  if (j.contains("gens")) {
    if (!j.at("gens").is_array()) fail("\"gens\" must be an array");
    for (const auto& g : j.at("gens")) gens.push_back(vector_from_json(f, n, g));
  }
  return AffineSubspace(side, base, linear_span(f, n, gens));
}

Arrangement parse_arrangement(const FieldDescriptor& f, std::size_t n, Side side, const Json& doc, const char* key) {
  std::vector<AffineSubspace> members;
  if (doc.contains(key)) {
    if (!doc.at(key).is_array()) fail(std::string("\"") + key + "\" must be an array");
    for (const auto& m : doc.at(key)) members.push_back(parse_member(f, n, side, m));
  }
  return Arrangement(side, f, n, members);
}

}  // namespace

Json scalar_to_json(const FieldScalar& x) {
  if (x.field().is_prime_field()) return x.residue();
  if (x.field().is_rationals()) return rational_string(x.rational());
  Json out = Json::array();
  for (const auto& c : x.coordinates()) out.push_back(rational_string(c));
  return out;
}

FieldScalar scalar_from_json(const FieldDescriptor& field, const Json& j) {
  if (field.is_cyclotomic() && j.is_array()) {
    if (j.size() != field.p() - 1 && j.size() != field.p()) {
      fail("cyclotomic value needs " + std::to_string(field.p() - 1) + " coordinates, got " + std::to_string(j.size()));
    }
    std::vector<mpq_class> coords;
    for (const auto& c : j) coords.push_back(parse_rational(c));
    return FieldScalar::from_coordinates(field.p(), coords);
  }
  return FieldScalar::from_rational(field, parse_rational(j));
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

Vector vector_from_json(const FieldDescriptor& field, std::size_t n, const Json& j) {
  if (!j.is_array() || j.size() != n) fail("expected a vector of length " + std::to_string(n) + ", got " + j.dump());
  Vector v;
  for (const auto& x : j) v.push_back(scalar_from_json(field, x));
  return v;
}

Json point_to_json(const Point& x) { return Json(x); }

Json linear_to_json(const LinearSubspace& l) {
  Json out = Json::array();
  for (const auto& b : l.basis()) out.push_back(vector_to_json(b));
  return out;
}

Json affine_to_json(const AffineSubspace& x) {
  return Json{{"base", vector_to_json(x.base())}, {"gens", linear_to_json(x.linear())}};
}

JobConfig parse_config(const Json& doc) {
  if (!doc.is_object()) fail("the document must be a JSON object");
  JobConfig c;
  c.field = parse_field(member(doc, "field"));
  const Json& dim = member(doc, "dim");
  if (!dim.is_number_unsigned() || dim.get<std::uint64_t>() == 0 || dim.get<std::uint64_t>() > 64) {
    fail("\"dim\" must be a positive integer");
  }
  c.dim = dim.get<std::size_t>();

  std::vector<Vector> rows;
  if (doc.contains("pairing")) {
    const Json& b = doc.at("pairing");
    if (!b.is_array() || b.size() != c.dim) fail("\"pairing\" must have " + std::to_string(c.dim) + " rows");
    for (const auto& r : b) rows.push_back(vector_from_json(c.field, c.dim, r));
    c.pairing = ExactMatrix::from_rows(c.field, c.dim, rows);
  } else {
    c.pairing = ExactMatrix::identity(c.field, c.dim);
  }
  if (!is_invertible(c.pairing)) fail("the pairing matrix is singular");

  c.xs = parse_arrangement(c.field, c.dim, Side::E, doc, "X");
  c.ys = parse_arrangement(c.field, c.dim, Side::F, doc, "Y");
  if (doc.contains("x1")) c.x1 = vector_from_json(c.field, c.dim, doc.at("x1"));

  if (doc.contains("distribution")) {
    if (!c.field.is_prime_field()) fail("distributions need an Fp field");
    const FieldDescriptor values = FieldDescriptor::cyclotomic(c.field.p());
    const Json& entries = member(doc.at("distribution"), "entries");
    if (!entries.is_array()) fail("\"entries\" must be an array");
    std::vector<DistributionEntry> out;
    for (const auto& e : entries) {
      out.push_back({vector_from_json(c.field, c.dim, member(e, "point")), scalar_from_json(values, member(e, "value"))});
    }
    c.distribution = std::move(out);
  }
  return c;
}

JobConfig parse_config_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

Json config_to_json(const JobConfig& c) {
  Json doc;
  doc["field"] = c.field.is_rationals() ? Json{{"kind", "Q"}} : Json{{"kind", "Fp"}, {"p", c.field.p()}};
  doc["dim"] = c.dim;
  Json rows = Json::array();
  for (const auto& r : c.pairing.row_vectors()) rows.push_back(vector_to_json(r));
  doc["pairing"] = rows;
  doc["X"] = Json::array();
  for (const auto& x : c.xs.members()) doc["X"].push_back(affine_to_json(x));
  doc["Y"] = Json::array();
  for (const auto& y : c.ys.members()) doc["Y"].push_back(affine_to_json(y));
  if (c.distribution) {
    Json entries = Json::array();
    for (const auto& e : *c.distribution) {
      entries.push_back({{"point", vector_to_json(e.point)}, {"value", scalar_to_json(e.value)}});
    }
    doc["distribution"] = {{"entries", entries}};
  }
  if (c.x1) doc["x1"] = vector_to_json(*c.x1);
  return doc;
}

std::vector<DistributionEntry> distribution_entries(const Distribution& d) {
  const auto& sp = *d.space();
  std::vector<DistributionEntry> out;
  for (std::size_t i : d.support()) out.push_back({sp.to_vector(sp.point(i)), d[i]});
  return out;
}

Json distribution_to_json(const Distribution& d) {
  Json entries = Json::array();
  for (const auto& e : distribution_entries(d)) {
    Json point = Json::array();
    for (const auto& x : e.point) point.push_back(x.residue());
    entries.push_back({{"point", point}, {"value", scalar_to_json(e.value)}});
  }
  return {{"entries", entries}};
}

Distribution config_distribution(const JobConfig& config, const SpacePtr& space) {
  if (!config.distribution) throw InvalidInput("input: no \"distribution\" given");
  std::vector<FieldScalar> values(space->size(), FieldScalar(space->values()));
  for (const auto& e : *config.distribution) values[space->index(space->to_point(e.point))] += e.value;
  return Distribution(space, Side::E, std::move(values));
}

}  // namespace affrig
