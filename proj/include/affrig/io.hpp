#pragma once

// The JSON job document shared by every CLI command, and the JSON encodings
// of scalars, subspaces and distributions used in reports.
//
//   {"field": {"kind": "Fp", "p": 5} | {"kind": "Q"},
//    "dim": n, "pairing": [[...], ...],
//    "X": [{"base": [...], "gens": [[...], ...]}, ...], "Y": [...],
//    "distribution": {"entries": [{"point": [...], "value": [...]}]},
//    "x1": [...]}
//
// Scalars of Q and F_p are "num/den" strings (integers are accepted too);
// values of Q(zeta_p) are arrays of p-1 such strings.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "affrig/finitemodel.hpp"

namespace affrig {

using Json = nlohmann::ordered_json;

struct DistributionEntry {
  Vector point;
  FieldScalar value;
  friend bool operator==(const DistributionEntry&, const DistributionEntry&) = default;
};

struct JobConfig {
  FieldDescriptor field;
  std::size_t dim = 0;
  ExactMatrix pairing;
  Arrangement xs{Side::E, FieldDescriptor::rationals(), 0};
  Arrangement ys{Side::F, FieldDescriptor::rationals(), 0};
  std::optional<std::vector<DistributionEntry>> distribution;
  /// Optional point of E; family searches then avoid x1 - X instead of X.
  std::optional<Vector> x1;

  DualPair dual_pair() const { return DualPair(pairing); }
  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

/// Throws InvalidInput on any schema, field or shape error.
JobConfig parse_config(const Json& doc);
JobConfig parse_config_text(const std::string& text);
Json config_to_json(const JobConfig& config);

Json scalar_to_json(const FieldScalar& x);
FieldScalar scalar_from_json(const FieldDescriptor& field, const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const FieldDescriptor& field, std::size_t n, const Json& j);
Json point_to_json(const Point& x);
Json linear_to_json(const LinearSubspace& l);
Json affine_to_json(const AffineSubspace& x);

/// {"entries": [...]} listing the nonzero values in point order.
Json distribution_to_json(const Distribution& d);
/// The E-side distribution described by the config; entries on the same point add up.
Distribution config_distribution(const JobConfig& config, const SpacePtr& space);
std::vector<DistributionEntry> distribution_entries(const Distribution& d);

}  // namespace affrig
