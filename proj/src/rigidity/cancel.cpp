#include <map>

#include "affrig/rigidity.hpp"

namespace affrig {
namespace {

// Element of the group ring over the translations: sum coeff * T_u.
using GroupRingElement = std::map<Point, FieldScalar>;

void add_term(GroupRingElement& g, const Point& u, const FieldScalar& c) {
  auto [it, inserted] = g.try_emplace(u, c);
  if (!inserted) it->second += c;
  if (it->second.is_zero()) g.erase(it);
}

Distribution apply_ring(const GroupRingElement& g, const Distribution& d) {
  Distribution out(d.space(), d.side());
  for (const auto& [u, c] : g) out += c * translate(u, d);
  return out;
}

void require_constant(const FiniteSpace& sp, const CancelTarget& t) {
  if (t.y.side() != Side::F) throw InvalidInput("cancellation targets live on F");
  for (const auto& g : t.y.linear().basis()) {
    if (sp.pairing(t.u, sp.to_point(g)) != 0) {
      throw ConstancyViolation("zeta^<u, .> is not constant on " + t.y.to_string());
    }
  }
  const FieldScalar expected = zeta_pow(sp.values(), sp.pairing(t.u, sp.to_point(t.y.base())));
  if (!(t.c == expected)) throw ConstancyViolation("target constant differs from zeta^<u, y> on " + t.y.to_string());
}

}  // namespace

std::vector<CancelTarget> make_targets(const SpacePtr& space, const AvoidingFamily& family, const Arrangement& ys) {
  if (family.u.size() != ys.size()) throw DimensionMismatch("family and arrangement sizes differ");
  std::vector<CancelTarget> out;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const Point u = space->to_point(family.u[i]);
    const FieldScalar c = zeta_pow(space->values(), space->pairing(u, space->to_point(ys[i].base())));
    CancelTarget t{u, ys[i], c};
    require_constant(*space, t);
    out.push_back(std::move(t));
  }
  return out;
}

CancelResult multiplier_cancel(const Distribution& d, const std::vector<CancelTarget>& targets) {
  const auto& sp = *d.space();
  if (d.side() != Side::E) throw InvalidInput("multiplier_cancel expects an E-side distribution");
  for (const auto& t : targets) require_constant(sp, t);

  Distribution composed = d;
  GroupRingElement ring{{Point(sp.dim(), 0), FieldScalar::one(sp.values())}};
  for (const auto& t : targets) {
    composed = translate(t.u, composed) - t.c * composed;
    GroupRingElement next;
    for (const auto& [u, c] : ring) {
      add_term(next, sp.add(u, t.u), c);
      add_term(next, u, -(t.c * c));
    }
    ring = std::move(next);
  }

  // Closed form: c_a = prod_Y binom(1, a_Y) (-c_Y)^(1 - a_Y), u_a = sum a_Y u_Y.
  const std::size_t k = targets.size();
  CancelResult result{composed, {}};
  GroupRingElement closed;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    ExpansionTerm term{std::vector<std::uint8_t>(k, 0), Point(sp.dim(), 0), FieldScalar::one(sp.values())};
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1U) {
        term.a[i] = 1;
        term.u = sp.add(term.u, targets[i].u);
      } else {
        term.c *= -targets[i].c;
      }
    }
    add_term(closed, term.u, term.c);
    result.expansion.push_back(std::move(term));
  }
  if (closed != ring) throw VerificationFailed("group-ring product and closed-form expansion differ");
  Distribution summed(d.space(), Side::E);
  for (const auto& term : result.expansion) summed += term.c * translate(term.u, d);
  if (!(summed == composed) || !(apply_ring(ring, d) == composed)) {
    throw VerificationFailed("expanded product differs from the composed operators");
  }
  return result;
}

}  // namespace affrig
