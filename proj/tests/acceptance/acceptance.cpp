// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "affrig/cli.hpp"
#include "affrig/rigidity.hpp"
#include "support/support.hpp"

namespace affrig {
namespace {

using Clock = std::chrono::steady_clock;
using testing::Rng;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
};

/// Collects the first few failure descriptions of one criterion.
struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Distribution reflect(const Distribution& d) {
  const auto& sp = *d.space();
  std::vector<FieldScalar> out(sp.size(), FieldScalar(sp.values()));
  for (std::size_t i = 0; i < sp.size(); ++i) out[sp.index(sp.neg(sp.point(i)))] = d[i];
  return Distribution(d.space(), d.side(), std::move(out));
}

std::size_t power(std::size_t p, std::size_t n) {
  std::size_t r = 1;
  while (n-- > 0) r *= p;
  return r;
}

Verdict criterion1() {
  const auto t0 = Clock::now();
  const JobConfig c = cli::demo_config("quadratic");
  const auto classes = classify_all(c.dual_pair(), c.xs, c.ys);
  const double s = seconds_since(t0);
  const bool ok = classes[0][0] == PairClass::Thin && classes[1][0] == PairClass::Perfect &&
                  classes[1][1] == PairClass::Thick;
  return {ok && s < 1.0, "(F+,F+)=" + to_string(classes[0][0]) + ", (F+ + F0,F+)=" + to_string(classes[1][0]) +
                             ", (F+ + F0,F+ + F0)=" + to_string(classes[1][1]) + ", " + fmt("%.4f s", s)};
}

Verdict criterion2() {
  const auto t0 = Clock::now();
  Rng rng(102);
  Tally t;
  for (std::uint32_t p : {2U, 3U, 5U}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (int k = 0; k < 25; ++k, ++t.cases) {
        const SpacePtr sp = make_space(testing::random_dual_pair(rng, FieldDescriptor::prime_field(p), n));
        const auto d = testing::random_distribution(rng, sp, Side::E, 0.5);
        const auto ft = fourier(d);
        t.check(ft == testing::direct_fourier(d), "fast transform differs from the character sum");
        const FieldScalar volume = FieldScalar::from_integer(sp->values(), static_cast<long long>(sp->size()));
        t.check(fourier(ft) == volume * reflect(d), "fourier o fourier != p^n reflection");
        t.check(fourier_inverse(ft) == d, "inverse transform does not recover d");
        const Point u = testing::random_point(rng, *sp);
        t.check(fourier(translate(u, d)) == multiplier(u, ft), "intertwining fails");
      }
      const FieldDescriptor values = FieldDescriptor::cyclotomic(p);
      for (std::uint32_t s = 0; s < p; ++s) {
        FieldScalar sum(values);
        for (std::uint32_t k = 0; k < p; ++k) sum += zeta_pow(values, static_cast<long long>(k * s));
        t.check(sum == FieldScalar::from_integer(values, s == 0 ? p : 0), "character orthogonality fails");
      }
    }
  }
  const double s = seconds_since(t0);
  return {t.failures == 0 && t.cases >= 200 && s < 60,
          std::to_string(t.cases) + " cases, " + std::to_string(t.failures) + " failures" +
              (t.failures ? " (" + t.first + ")" : "") + ", " + fmt("%.2f s", s)};
}

Verdict criterion3() {
  Rng rng(103);
  Tally t;
  for (int k = 0; k < 60; ++k, ++t.cases) {
    const std::uint32_t p = (k % 3 == 0) ? 3 : (k % 3 == 1 ? 5 : 7);
    const std::size_t n = 1 + k % 3;
    const FieldDescriptor f = FieldDescriptor::prime_field(p);
    const SpacePtr sp = make_space(testing::random_dual_pair(rng, f, n));
    const auto x = testing::random_affine(rng, Side::E, f, n, testing::uniform(rng, 0, n));
    const LinearSubspace ly = perp(sp->dual_pair(), x.linear(), Side::E);
    const Vector y0 = testing::random_vector(rng, f, n);
    const AffineSubspace y(Side::F, y0, ly);
    const Arrangement xs(Side::E, f, n, {x});
    const Arrangement ys(Side::F, f, n, {y});
    t.check(classify_pair(sp->dual_pair(), x, y) == PairClass::Perfect, "generated pair is not perfect");
    const auto basis = space_basis(sp, xs, ys);
    const Distribution mu = mu_basis(sp, x, sp->to_point(y0));
    t.check(basis.dimension == 1, "dimension " + std::to_string(basis.dimension) + " for a perfect pair");
    t.check(!mu.is_zero() && in_span(echelon_basis(basis.basis), mu) && in_span(echelon_basis({mu}), basis.basis.at(0)),
            "space differs from span(mu)");
    const auto support = fourier(mu).support();
    t.check(support == sp->points_of(y), "FT(mu) support differs from y0 + perp L(X)");
  }
  return {t.failures == 0 && t.cases >= 50,
          std::to_string(t.cases) + " perfect pairs, " + std::to_string(t.failures) + " failures" +
              (t.failures ? " (" + t.first + ")" : "")};
}

Verdict criterion4() {
  Rng rng(104);
  Tally t;
  std::size_t attempts = 0;
  std::size_t no_family = 0;
  std::size_t vacuous = 0;
  while (t.cases < 110 && attempts < 5000) {
    ++attempts;
    const std::uint32_t p = attempts % 2 ? 5 : 7;
    const std::size_t n = 1 + attempts % 3;
    auto inst = testing::random_admissible(rng, p, n, 250);
    const auto x1 = testing::random_affine(rng, Side::E, inst.sp->scalars(), n, testing::uniform(rng, 0, n - 1));
    bool thin = true;
    for (const auto& y : inst.ys.members()) thin = thin && classify_pair(inst.sp->dual_pair(), x1, y) == PairClass::Thin;
    if (!thin || inst.xs.index_of(x1)) continue;
    const Arrangement xs = inst.xs.with(x1);
    const std::size_t i1 = xs.size() - 1;
    const auto cert = elimination_certificate(inst.sp, xs, inst.ys, i1);
    if (!cert.complete()) {
      ++no_family;
      continue;
    }
    if (cert.families.empty()) {
      ++vacuous;
      continue;
    }
    ++t.cases;
    const auto with = space_basis(inst.sp, xs, inst.ys);
    const auto without = space_basis(inst.sp, inst.xs, inst.ys);
    t.check(with.dimension == without.dimension, "dimensions differ with and without X1");
    const auto e_with = echelon_basis(with.basis);
    const auto e_without = echelon_basis(without.basis);
    bool mutual = true;
    for (const auto& b : with.basis) mutual = mutual && in_span(e_without, b);
    for (const auto& b : without.basis) mutual = mutual && in_span(e_with, b);
    t.check(mutual, "spaces are not mutually contained");
  }
  return {t.failures == 0 && t.cases >= 100,
          std::to_string(t.cases) + " arrangements; skipped " + std::to_string(vacuous) + " with X1 covered by the rest and " +
              std::to_string(no_family) + " for lack of an avoiding family; " + std::to_string(t.failures) +
              " failures" + (t.failures ? " (" + t.first + ")" : "")};
}

struct AdmissibleCase {
  testing::Instance inst;
  DecompositionPlan plan;
  SpaceBasis basis;
  std::size_t perfect = 0;
};

struct Criterion5 {
  Verdict verdict;
  std::vector<AdmissibleCase> cases;
};

Criterion5 criterion5() {
  Rng rng(105);
  Tally t;
  std::map<std::uint32_t, std::pair<std::size_t, std::size_t>> runs;  // p -> (attempted, family failures)
  std::vector<AdmissibleCase> cases;
  for (std::uint32_t p : {5U, 7U, 11U}) {
    for (int k = 0; k < 45; ++k) {
      const std::size_t n = 1 + k % 3;
      auto inst = testing::random_admissible(rng, p, n);
      ++runs[p].first;
      DecompositionPlan plan{inst.xs, inst.ys, {}};
      try {
        plan = plan_decomposition(inst.sp, inst.xs, inst.ys);
      } catch (const ModelTooSmall&) {
        ++runs[p].second;
        continue;
      }
      ++t.cases;
      const DualPair& dp = inst.sp->dual_pair();
      const auto pairs = perfect_pairs(dp, inst.xs, inst.ys);
      auto basis = space_basis(inst.sp, inst.xs, inst.ys);
      t.check(basis.dimension == pairs.size(), "p=" + std::to_string(p) + ": dimension " +
                                                   std::to_string(basis.dimension) + " vs " +
                                                   std::to_string(pairs.size()) + " perfect pairs");
      std::vector<Distribution> mus;
      for (const auto& m : pairs) mus.push_back(mu_basis(inst.sp, inst.xs[m.x], inst.sp->to_point(inst.ys[m.y].base())));
      t.check(family_rank(mus) == pairs.size(), "mu family is not of full rank");
      const auto e_basis = echelon_basis(basis.basis);
      for (const auto& mu : mus) t.check(in_span(e_basis, mu), "mu basis element outside the oracle space");
      cases.push_back({std::move(inst), std::move(plan), std::move(basis), pairs.size()});
    }
  }
  std::ostringstream detail;
  detail << t.cases << " arrangements, " << t.failures << " failures";
  if (t.failures) detail << " (" << t.first << ")";
  detail << "; family-search failures";
  for (const auto& [p, r] : runs) detail << " p=" << p << ": " << r.second << "/" << r.first;
  const auto& r11 = runs[11];
  const double rate11 = static_cast<double>(r11.second) / static_cast<double>(r11.first);
  detail << " (p=11 rate " << fmt("%.1f%%", 100 * rate11) << ")";
  return {{t.failures == 0 && t.cases >= 100 && rate11 < 0.2, detail.str()}, std::move(cases)};
}

Verdict criterion6(const std::vector<AdmissibleCase>& cases) {
  Tally t;
  std::size_t vectors = 0;
  for (const auto& c : cases) {
    const auto& sp = c.inst.sp;
    for (const auto& d : c.basis.basis) {
      ++vectors;
      try {
        const auto r = apply_plan(d, c.plan);
        t.check(r.residual.is_zero(), "nonzero residual");
        Distribution sum(sp, Side::E);
        std::vector<Distribution> comps;
        for (const auto& comp : r.components) {
          t.check(classify_pair(sp->dual_pair(), c.inst.xs[comp.x], c.inst.ys[comp.y]) == PairClass::Perfect,
                  "component attached to a pair that is not perfect");
          t.check(comp.d.supported_in(sp->indicator(c.inst.xs[comp.x])), "component leaves its X");
          t.check(testing::direct_fourier(comp.d).supported_in(sp->indicator(c.inst.ys[comp.y])),
                  "component's Fourier transform leaves its Y");
          sum += comp.d;
          comps.push_back(comp.d);
        }
        t.check(sum == d, "components do not sum to d");
        t.check(family_rank(comps) == comps.size(), "components are linearly dependent");
      } catch (const Error& e) {
        t.check(false, e.what());
      }
    }
  }
  t.cases = vectors;
  return {t.failures == 0 && !cases.empty(),
          std::to_string(vectors) + " basis vectors over " + std::to_string(cases.size()) + " arrangements, " +
              std::to_string(t.failures) + " failures" + (t.failures ? " (" + t.first + ")" : "")};
}

Verdict criterion7() {
  Tally t;
  std::string sizes;
  for (std::uint32_t p : {2U, 3U, 5U}) {
    for (std::size_t n = 1; n <= 2; ++n, ++t.cases) {
      const FieldDescriptor f = FieldDescriptor::prime_field(p);
      const SpacePtr sp = make_space(DualPair::standard(f, n));
      const Arrangement xs(Side::E, f, n, {AffineSubspace::full(Side::E, f, n)});
      const Arrangement ys(Side::F, f, n, {AffineSubspace::full(Side::F, f, n)});
      const auto b = space_basis(sp, xs, ys);
      t.check(b.dimension == power(p, n), "dimension " + std::to_string(b.dimension) + " over F_" + std::to_string(p));
      t.check(perfect_pairs(sp->dual_pair(), xs, ys).empty(), "(E, F) counted as perfect");
      t.check(has_thick_pair(sp->dual_pair(), xs, ys).has_value(), "(E, F) not flagged thick");
      sizes += (sizes.empty() ? "" : ", ") + std::to_string(b.dimension);
    }
  }
  return {t.failures == 0, "dimensions " + sizes + " against 0 perfect pairs" + (t.failures ? "; " + t.first : "")};
}

Verdict criterion8() {
  Rng rng(108);
  Tally t;
  for (int k = 0; k < 120; ++k, ++t.cases) {
    const std::uint32_t p = k % 3 == 0 ? 3 : (k % 3 == 1 ? 5 : 7);
    const std::size_t n = 1 + k % 2;
    const FieldDescriptor f = FieldDescriptor::prime_field(p);
    const SpacePtr sp = make_space(testing::random_dual_pair(rng, f, n));
    const auto d = testing::random_distribution(rng, sp, Side::E, 0.4);
    std::vector<CancelTarget> targets;
    for (std::size_t j = testing::uniform(rng, 1, 4); j > 0; --j) {
      const auto y = testing::random_affine(rng, Side::F, f, n, testing::uniform(rng, 0, n));
      const LinearSubspace ann = perp(sp->dual_pair(), y.linear(), Side::F);
      Vector u = zero_vector(f, n);
      for (const auto& g : ann.basis()) u = add(u, scale(testing::random_scalar(rng, f), g));
      const Point pu = sp->to_point(u);
      targets.push_back({pu, y, zeta_pow(sp->values(), sp->pairing(pu, sp->to_point(y.base())))});
    }
    Distribution composed = d;
    for (const auto& tg : targets) composed = translate(tg.u, composed) - tg.c * composed;
    // Coefficients of prod (T_u - c) by repeated convolution in the group ring.
    std::map<Point, FieldScalar> ring{{Point(n, 0), FieldScalar::one(sp->values())}};
    for (const auto& tg : targets) {
      std::map<Point, FieldScalar> next;
      for (const auto& [u, c] : ring) {
        auto add_to = [&next, &sp](const Point& at, const FieldScalar& v) {
          auto it = next.try_emplace(at, FieldScalar(sp->values())).first;
          it->second += v;
        };
        add_to(sp->add(u, tg.u), c);
        add_to(u, -(tg.c * c));
      }
      ring = std::move(next);
    }
    try {
      const auto r = multiplier_cancel(d, targets);
      t.check(r.d_prime == composed, "composition value mismatch");
      std::map<Point, FieldScalar> closed;
      Distribution expanded(sp, Side::E);
      for (const auto& term : r.expansion) {
        auto it = closed.try_emplace(term.u, FieldScalar(sp->values())).first;
        it->second += term.c;
        expanded += term.c * translate(term.u, d);
      }
      for (const auto& [u, c] : ring) {
        const auto it = closed.find(u);
        const FieldScalar other = it == closed.end() ? FieldScalar(sp->values()) : it->second;
        t.check(other == c, "expansion coefficient mismatch");
      }
      for (const auto& [u, c] : closed) {
        if (!ring.count(u)) t.check(c.is_zero(), "expansion has an extra translate");
      }
      t.check(expanded == composed, "expansion value mismatch");
    } catch (const Error& e) {
      t.check(false, e.what());
    }
  }
  return {t.failures == 0 && t.cases >= 100,
          std::to_string(t.cases) + " triples, " + std::to_string(t.failures) + " failures" +
              (t.failures ? " (" + t.first + ")" : "")};
}

}  // namespace
}  // namespace affrig

int main() {
  using namespace affrig;
  const auto start = Clock::now();
  int failed = 0;
  auto report = [&failed](int k, const Verdict& v) {
    std::printf("%s criterion %d: %s\n", v.pass ? "PASS" : "FAIL", k, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  };
  auto timed = [](const std::function<Verdict()>& f) {
    const auto t0 = Clock::now();
    Verdict v = f();
    v.detail += fmt(" [%.2f s]", seconds_since(t0));
    return v;
  };

  report(1, criterion1());
  report(2, timed(criterion2));
  report(3, timed(criterion3));
  report(4, timed(criterion4));
  Criterion5 c5;
  report(5, timed([&c5] {
           c5 = criterion5();
           return c5.verdict;
         }));
  report(6, timed([&c5] { return criterion6(c5.cases); }));
  report(7, timed(criterion7));
  report(8, timed(criterion8));
  const double total = seconds_since(start);
  report(9, {total < 600, fmt("acceptance run %.1f s (limit 600 s)", total) + "; ctest reports the time of every test binary"});
  return failed == 0 ? 0 : 1;
}
