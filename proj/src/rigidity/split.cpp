#include <algorithm>

#include "affrig/rigidity.hpp"

namespace affrig {
namespace {

Arrangement join(const Arrangement& a, const Arrangement& b) {
  Arrangement out = a;
  for (const auto& m : b.members()) out = out.with(m);
  return out;
}

const LinearSubspace& common_linear_part(const Arrangement& xs, const char* what) {
  const LinearSubspace& l = xs[0].linear();
  for (const auto& m : xs.members()) {
    if (!(m.linear() == l)) throw InvalidInput(std::string(what) + " members are not cosets of one subspace");
  }
  return l;
}

// Pointwise product with prod over X != X1 of
// (zeta^<., v_X> - zeta^<X, v_X>) / (zeta^<X1, v_X> - zeta^<X, v_X>).
Distribution separate(const Distribution& d, const Arrangement& xs, std::size_t x1,
                      const std::vector<SeparationCertificate>& certs) {
  const auto& sp = *d.space();
  Distribution out = d;
  for (const auto& cert : certs) {
    if (cert.x1 != x1) continue;
    const Point v = sp.to_point(cert.v);
    const FieldScalar cx = zeta_pow(sp.values(), sp.pairing(sp.to_point(xs[cert.x].base()), v));
    const FieldScalar cx1 = zeta_pow(sp.values(), sp.pairing(sp.to_point(xs[x1].base()), v));
    out = (cx1 - cx).inverse() * (multiplier(v, out) - cx * out);
  }
  return out;
}

}  // namespace

PureAffineSplit pure_affine_split(const Distribution& d, const Arrangement& xs, const Arrangement& ys) {
  const SpacePtr& space = d.space();
  const auto& sp = *space;
  if (xs.side() != Side::E || ys.side() != Side::F) throw InvalidInput("pure_affine_split expects xs on E and ys on F");
  if (!in_space(d, xs, ys)) throw SupportViolation("distribution is not in the space of the pure affine block");
  PureAffineSplit out;
  if (xs.empty() || ys.empty()) {
    out.trivial = true;
    return out;
  }
  const DualPair& dp = sp.dual_pair();
  const LinearSubspace& x0 = common_linear_part(xs, "X");
  const LinearSubspace& y0 = common_linear_part(ys, "Y");
  const LinearSubspace annihilator = perp(dp, x0, Side::E);
  if (!y0.contains(annihilator)) {
    out.trivial = true;
    if (!d.is_zero()) throw VerificationFailed("nonzero distribution in a space that must vanish");
    return out;
  }

  for (std::size_t x1 = 0; x1 < xs.size(); ++x1) {
    for (std::size_t x = 0; x < xs.size(); ++x) {
      if (x == x1) continue;
      const Vector diff = sub(xs[x].base(), xs[x1].base());
      bool found = false;
      for (const auto& v : annihilator.basis()) {
        if (!dp.pair(diff, v).is_zero()) {
          out.certificates.push_back({x1, x, v});
          found = true;
          break;
        }
      }
      if (!found) throw CertificateNotFound("no vector of perp(X0) separates " + xs[x].to_string() + " from " + xs[x1].to_string());
    }
  }

  const std::vector<bool> y_mask = sp.indicator(ys);
  Distribution total(space, Side::E);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Distribution dx = restrict(d, xs[i]);
    if (!(separate(d, xs, i, out.certificates) == dx)) {
      throw VerificationFailed("separating multipliers do not isolate " + xs[i].to_string());
    }
    const Distribution g = fourier(dx);
    if (!g.supported_in(y_mask)) throw VerificationFailed("restriction to " + xs[i].to_string() + " left the Y block");
    const std::vector<bool> x_mask = sp.indicator(xs[i]);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      Distribution c = fourier_inverse(restrict(g, ys[j]));
      if (!c.supported_in(x_mask)) throw VerificationFailed("Fourier-side split left " + xs[i].to_string());
      total += c;
      out.components.push_back({i, j, std::move(c)});
    }
  }
  if (!(total == d)) throw VerificationFailed("pure affine components do not sum to the input");
  return out;
}

Dec2Plan prepare_dec2(const SpacePtr& space, const Dec2Blocks& blocks, const SearchOptions& options,
                      const std::string& where) {
  const DualPair& dp = space->dual_pair();
  for (const auto& x : blocks.xs0.members()) {
    if (!(x.linear() == blocks.x0)) throw InvalidInput("xs0 member " + x.to_string() + " is not a coset of X0");
  }
  for (const auto& y : blocks.ys0.members()) {
    if (!(y.linear() == blocks.y0)) throw InvalidInput("ys0 member " + y.to_string() + " is not a coset of Y0");
  }
  for (const auto& x : blocks.xs_rest.members()) {
    if (classify_linear(dp, x.linear(), blocks.y0) != PairClass::Thin) {
      throw HypothesisViolated("(" + x.to_string() + ", Y0) is not thin");
    }
  }
  for (const auto& y : blocks.ys_rest.members()) {
    if (classify_linear(dp, blocks.x0, y.linear()) != PairClass::Thin) {
      throw HypothesisViolated("(X0, " + y.to_string() + ") is not thin");
    }
  }

  std::vector<AffineSubspace> forbidden;
  for (const auto& a : blocks.xs0.members()) {
    for (const auto& b : blocks.xs0.members()) {
      AffineSubspace diff = affine_difference(a, b);
      if (std::find(forbidden.begin(), forbidden.end(), diff) == forbidden.end()) forbidden.push_back(std::move(diff));
    }
  }
  FamilySearch search = find_avoiding_family(dp, blocks.ys_rest, forbidden, options);
  if (!search.family) throw ModelTooSmall(space->p(), search.exhausted, where);

  Dec2Plan plan{blocks, std::move(*search.family), {}, FieldScalar::one(space->values()),
                Arrangement(Side::E, dp.field(), dp.dim()), search.nodes};
  plan.targets = make_targets(space, plan.family, blocks.ys_rest);
  for (const auto& t : plan.targets) plan.c0 *= -t.c;

  std::vector<AffineSubspace> block_translates;
  std::vector<AffineSubspace> translates;
  const std::size_t k = plan.family.u.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Vector u = zero_vector(dp.field(), dp.dim());
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1U) u = add(u, plan.family.u[i]);
    }
    for (const auto& x : blocks.xs0.members()) block_translates.push_back(affine_translate(u, x));
    for (const auto& x : blocks.xs_rest.members()) translates.push_back(affine_translate(u, x));
  }
  const Arrangement rest_translates(Side::E, dp.field(), dp.dim(), translates);
  plan.meet = meet_family(blocks.xs0, rest_translates);

  // D' lives on the translates of every member with Fourier support in the
  // Y0 block; the translates of rest members are thin against Y0 and drop out.
  const Arrangement all_translates = join(Arrangement(Side::E, dp.field(), dp.dim(), block_translates), rest_translates);
  std::vector<std::size_t> drop;
  for (std::size_t i = 0; i < all_translates.size(); ++i) {
    if (!(all_translates[i].linear() == blocks.x0)) drop.push_back(i);
  }
  plan.certified_points += certify_removal(space, all_translates, blocks.ys0, drop, options, where + ", cancelled term");

  // D - D0/c0 lives on the rest members and the meet; the meet drops out
  // against all of Y, then the Y0 block drops out against the rest members.
  const Arrangement ys_all = join(blocks.ys0, blocks.ys_rest);
  const Arrangement with_meet = join(blocks.xs_rest, plan.meet);
  std::vector<std::size_t> meet_members;
  for (std::size_t i = blocks.xs_rest.size(); i < with_meet.size(); ++i) meet_members.push_back(i);
  plan.certified_points += certify_removal(space, with_meet, ys_all, meet_members, options, where + ", meet");
  std::vector<std::size_t> y_block(blocks.ys0.size());
  for (std::size_t j = 0; j < y_block.size(); ++j) y_block[j] = j;
  plan.certified_points +=
      certify_dual_removal(space, blocks.xs_rest, ys_all, y_block, options, where + ", Y0 block on the Fourier side");
  return plan;
}

Dec2Split apply_dec2(const Distribution& d, const Dec2Plan& plan) {
  const auto& sp = *d.space();
  const Dec2Blocks& b = plan.blocks;
  if (!in_space(d, join(b.xs0, b.xs_rest), join(b.ys0, b.ys_rest))) {
    throw SupportViolation("distribution is not in the space of the two blocks");
  }
  const CancelResult cancel = multiplier_cancel(d, plan.targets);
  const Distribution& dp = cancel.d_prime;
  if (!fourier(dp).supported_in(sp.indicator(b.ys0))) {
    throw VerificationFailed("cancellation left Fourier support outside the Y0 block");
  }

  const std::vector<bool> block = sp.indicator(b.xs0);
  for (const auto& term : cancel.expansion) {
    bool nonzero = false;
    for (auto a : term.a) nonzero = nonzero || a != 0;
    if (!nonzero) continue;
    for (const auto& x : b.xs0.members()) {
      for (std::size_t i : sp.points_of(affine_translate(sp.to_vector(term.u), x))) {
        if (block[i]) throw VerificationFailed("translated block meets the X0 block");
      }
    }
  }

  Distribution component0 = plan.c0.inverse() * restrict(dp, block);
  Distribution remainder = d - component0;
  if (!in_space(component0, b.xs0, b.ys0)) {
    throw SupportViolation("X0 component is not in the space of the X0 block");
  }
  if (!in_space(remainder, b.xs_rest, b.ys_rest)) {
    throw SupportViolation("remainder is not in the space of the remaining members");
  }
  return {std::move(component0), std::move(remainder)};
}

Dec2Split dec2_split(const Distribution& d, const Dec2Blocks& blocks, const SearchOptions& options) {
  return apply_dec2(d, prepare_dec2(d.space(), blocks, options));
}

}  // namespace affrig
