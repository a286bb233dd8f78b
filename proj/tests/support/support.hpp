#pragma once

// Hand-rolled generators and independent reference computations shared by
// the unit, property and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "affrig/finitemodel.hpp"

namespace affrig::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline FieldScalar random_scalar(Rng& rng, const FieldDescriptor& f) {
  if (f.is_prime_field()) return FieldScalar::from_integer(f, static_cast<long long>(uniform(rng, 0, f.p() - 1)));
  if (f.is_rationals()) {
    const long num = static_cast<long>(uniform(rng, 0, 14)) - 7;
    const long den = static_cast<long>(uniform(rng, 1, 5));
    return FieldScalar::from_rational(f, mpq_class(num, den));
  }
  std::vector<mpq_class> coords(f.p() - 1);
  for (auto& c : coords) c = mpq_class(static_cast<long>(uniform(rng, 0, 8)) - 4, static_cast<long>(uniform(rng, 1, 3)));
  return FieldScalar::from_coordinates(f.p(), coords);
}

inline Vector random_vector(Rng& rng, const FieldDescriptor& f, std::size_t n) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(rng, f));
  return v;
}

inline ExactMatrix random_matrix(Rng& rng, const FieldDescriptor& f, std::size_t r, std::size_t c) {
  ExactMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar(rng, f);
  }
  return m;
}

inline DualPair random_dual_pair(Rng& rng, const FieldDescriptor& f, std::size_t n) {
  while (true) {
    ExactMatrix m = random_matrix(rng, f, n, n);
    if (is_invertible(m)) return DualPair(m);
  }
}

inline LinearSubspace random_linear(Rng& rng, const FieldDescriptor& f, std::size_t n, std::size_t k) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(random_vector(rng, f, n));
  return linear_span(f, n, gens);
}

/// Subspace of dimension exactly k.
inline LinearSubspace random_linear_exact(Rng& rng, const FieldDescriptor& f, std::size_t n, std::size_t k) {
  while (true) {
    LinearSubspace l = random_linear(rng, f, n, k);
    if (l.dim() == k) return l;
  }
}

inline AffineSubspace random_affine(Rng& rng, Side side, const FieldDescriptor& f, std::size_t n, std::size_t k) {
  return AffineSubspace(side, random_vector(rng, f, n), random_linear_exact(rng, f, n, k));
}

inline Distribution random_distribution(Rng& rng, const SpacePtr& sp, Side side, double density = 0.5) {
  std::vector<FieldScalar> vals(sp->size(), FieldScalar(sp->values()));
  std::bernoulli_distribution keep(density);
  for (auto& v : vals) {
    if (keep(rng)) v = random_scalar(rng, sp->values());
  }
  return Distribution(sp, side, std::move(vals));
}

/// Random linear combination of a basis with small integer coefficients.
inline Distribution random_combination(Rng& rng, const SpacePtr& sp, const std::vector<Distribution>& basis) {
  Distribution d(sp, Side::E);
  for (const auto& b : basis) {
    const long long c = static_cast<long long>(uniform(rng, 0, 6)) - 3;
    if (c != 0) d += FieldScalar::from_integer(sp->values(), c) * b;
  }
  return d;
}

/// Textbook O(p^2n) character sum, used to check the fast transform.
inline Distribution direct_fourier(const Distribution& d, int sign = 1) {
  const auto& sp = *d.space();
  const Side target = opposite(d.side());
  std::vector<FieldScalar> out(sp.size(), FieldScalar(sp.values()));
  for (std::size_t w = 0; w < sp.size(); ++w) {
    const Point pw = sp.point(w);
    for (std::size_t v = 0; v < sp.size(); ++v) {
      if (d[v].is_zero()) continue;
      const Point pv = sp.point(v);
      const std::uint32_t e = d.side() == Side::E ? sp.pairing(pv, pw) : sp.pairing(pw, pv);
      out[w] += zeta_pow(sp.values(), sign * static_cast<long long>(e)) * d[v];
    }
  }
  return Distribution(d.space(), target, std::move(out));
}

inline Point random_point(Rng& rng, const FiniteSpace& sp) {
  return sp.point(static_cast<std::size_t>(uniform(rng, 0, sp.size() - 1)));
}

struct Instance {
  SpacePtr sp;
  Arrangement xs;
  Arrangement ys;
};

/// Arrangement with no thick pair, assembled from blocks of parallel perfect
/// pairs plus a few unrelated members. The smaller of the two unions has at
/// most max_points points, which keeps the oracle cheap.
inline Instance random_admissible(Rng& rng, std::uint32_t p, std::size_t n, std::size_t max_points = 400) {
  const FieldDescriptor f = FieldDescriptor::prime_field(p);
  while (true) {
    const DualPair dp = uniform(rng, 0, 1) ? DualPair::standard(f, n) : random_dual_pair(rng, f, n);
    std::vector<AffineSubspace> xs;
    std::vector<AffineSubspace> ys;
    const std::size_t blocks = uniform(rng, 1, 3);
    for (std::size_t b = 0; b < blocks; ++b) {
      const LinearSubspace x0 = random_linear_exact(rng, f, n, uniform(rng, 0, n));
      const LinearSubspace y0 = perp(dp, x0, Side::E);
      for (std::size_t c = uniform(rng, 1, 2); c > 0; --c) xs.emplace_back(Side::E, random_vector(rng, f, n), x0);
      for (std::size_t c = uniform(rng, 0, 2); c > 0; --c) ys.emplace_back(Side::F, random_vector(rng, f, n), y0);
    }
    for (std::size_t c = uniform(rng, 0, 2); c > 0; --c) xs.push_back(random_affine(rng, Side::E, f, n, uniform(rng, 0, n)));
    for (std::size_t c = uniform(rng, 0, 2); c > 0; --c) ys.push_back(random_affine(rng, Side::F, f, n, uniform(rng, 0, n)));

    Arrangement ax(Side::E, f, n, xs);
    Arrangement ay(Side::F, f, n, ys);
    if (has_thick_pair(dp, ax, ay)) continue;
    auto points = [p](const Arrangement& a) {
      std::size_t total = 0;
      for (const auto& x : a.members()) {
        std::size_t s = 1;
        for (std::size_t i = 0; i < x.dim(); ++i) s *= p;
        total += s;
      }
      return total;
    };
    if (std::min(points(ax), points(ay)) > max_points) continue;
    return {make_space(dp), std::move(ax), std::move(ay)};
  }
}

}  // namespace affrig::testing

namespace affrig {

inline void PrintTo(const FieldScalar& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const LinearSubspace& l, std::ostream* os) { *os << l.to_string(); }
inline void PrintTo(const AffineSubspace& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const ExactMatrix& m, std::ostream* os) { *os << m.to_string(); }
inline void PrintTo(const Distribution& d, std::ostream* os) {
  *os << to_string(d.side()) << "{";
  for (std::size_t i : d.support()) *os << " " << i << ":" << d[i].to_string();
  *os << " }";
}

}  // namespace affrig
