// Kernel of the support system
//
//   D(x) = 0 for x outside the union of xs,   FT(D)(y) = 0 for y outside the union of ys.
//
// The unknowns are either the values of D on the union of xs ("support") or
// the values of FT(D) on the union of ys ("spectrum"), whichever is smaller,
// so every constraint row has entries zeta^e. Rows are selected by
// elimination modulo a prime ideal (q, zeta - w) of Z[zeta]: rows independent
// there are independent over Q(zeta), so the selected rows bound the rank from
// below. The kernel of the selected rows is reconstructed from its images
// under all p-1 embeddings and several primes, and every reconstructed vector
// is then checked exactly against the full system. Passing vectors lie in the
// true kernel and their count equals the upper bound, so the result is exact.

#include <algorithm>
#include <functional>
#include <utility>

#include "affrig/finitemodel.hpp"

namespace affrig {
namespace {

using u64 = std::uint64_t;

u64 mul_mod(u64 a, u64 b, u64 q) { return a * b % q; }

u64 pow_mod(u64 base, u64 e, u64 q) {
  u64 r = 1;
  base %= q;
  while (e > 0) {
    if (e & 1U) r = mul_mod(r, base, q);
    base = mul_mod(base, base, q);
    e >>= 1U;
  }
  return r;
}

u64 inv_mod(u64 a, u64 q) { return pow_mod(a, q - 2, q); }

struct ModPrime {
  u64 q = 0;
  u64 omega = 0;  // primitive p-th root of unity
};

// Primes q = 1 (mod p) below 2^31, descending.
class PrimeSource {
 public:
  explicit PrimeSource(std::uint32_t p) : p_(p) {
    next_ = ((u64{1} << 31) - 1) / p_ * p_ + 1;
    if (next_ >= (u64{1} << 31)) next_ -= p_;
  }

  ModPrime next() {
    while (true) {
      const u64 q = next_;
      next_ -= p_;
      if (!is_prime(q)) continue;
      for (u64 g = 2; g < q; ++g) {
        const u64 w = pow_mod(g, (q - 1) / p_, q);
        if (w != 1) return {q, w};
      }
    }
  }

 private:
  u64 p_;
  u64 next_;
};

struct System {
  std::uint32_t p = 0;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<Point> col_points;
  std::vector<Point> row_keys;  // row point mapped so that exponent = key . col_point
  int sign = 1;

  std::uint32_t exponent(std::size_t r, std::size_t c) const {
    u64 s = 0;
    const Point& a = row_keys[r];
    const Point& b = col_points[c];
    for (std::size_t i = 0; i < a.size(); ++i) s += u64{a[i]} * b[i];
    const u64 e = s % p;
    return static_cast<std::uint32_t>(sign > 0 ? e : (p - e) % p);
  }
};

// Incremental elimination over F_q with zeta -> omega; returns the indices of
// a maximal independent set of rows (greedy, in row order).
std::vector<std::size_t> select_rows(const System& sys, const ModPrime& mp) {
  const u64 q = mp.q;
  std::vector<u64> powers(sys.p);
  for (std::uint32_t e = 0; e < sys.p; ++e) powers[e] = pow_mod(mp.omega, e, q);
  std::vector<std::vector<u64>> basis;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> chosen;
  std::vector<u64> row(sys.cols);
  for (std::size_t r = 0; r < sys.rows && chosen.size() < sys.cols; ++r) {
    for (std::size_t c = 0; c < sys.cols; ++c) row[c] = powers[sys.exponent(r, c)];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const u64 f = row[pivots[b]];
      if (f == 0) continue;
      const auto& br = basis[b];
      for (std::size_t c = 0; c < sys.cols; ++c) {
        if (br[c] != 0) row[c] = (row[c] + q - mul_mod(f, br[c], q)) % q;
      }
    }
    std::size_t lead = sys.cols;
    for (std::size_t c = 0; c < sys.cols; ++c) {
      if (row[c] != 0) {
        lead = c;
        break;
      }
    }
    if (lead == sys.cols) continue;
    const u64 inv = inv_mod(row[lead], q);
    for (auto& x : row) x = mul_mod(x, inv, q);
    basis.push_back(row);
    pivots.push_back(lead);
    chosen.push_back(r);
  }
  return chosen;
}

struct ModRref {
  std::vector<std::size_t> pivots;
  std::vector<std::vector<u64>> rows;
};

ModRref rref_mod(std::vector<std::vector<u64>> a, std::size_t cols, u64 q) {
  ModRref out;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < a.size(); ++c) {
    std::size_t found = a.size();
    for (std::size_t r = pr; r < a.size(); ++r) {
      if (a[r][c] != 0) {
        found = r;
        break;
      }
    }
    if (found == a.size()) continue;
    std::swap(a[found], a[pr]);
    const u64 inv = inv_mod(a[pr][c], q);
    for (std::size_t k = c; k < cols; ++k) a[pr][k] = mul_mod(a[pr][k], inv, q);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == pr || a[r][c] == 0) continue;
      const u64 f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (a[pr][k] != 0) a[r][k] = (a[r][k] + q - mul_mod(f, a[pr][k], q)) % q;
      }
    }
    out.pivots.push_back(c);
    ++pr;
  }
  a.resize(pr);
  out.rows = std::move(a);
  return out;
}

// Inverse of V[j][t] = omega^((j+1) t), j, t in [0, p-1).
std::vector<std::vector<u64>> embedding_inverse(std::uint32_t p, const ModPrime& mp) {
  const std::size_t m = p - 1;
  std::vector<std::vector<u64>> a(m, std::vector<u64>(2 * m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t t = 0; t < m; ++t) a[j][t] = pow_mod(mp.omega, (j + 1) * t, mp.q);
    a[j][m + j] = 1;
  }
  const ModRref r = rref_mod(std::move(a), 2 * m, mp.q);
  std::vector<std::vector<u64>> inv(m, std::vector<u64>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) inv[i][k] = r.rows[i][m + k];
  }
  return inv;
}

bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpq_class& out) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m;
  mpz_class r1 = a % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0;
  mpz_class t1 = 1;
  while (r1 > bound) {
    const mpz_class quot = r0 / r1;
    mpz_class r2 = r0 - quot * r1;
    mpz_class t2 = t0 - quot * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (sgn(t1) == 0 || abs(t1) > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, t1);
  out.canonicalize();
  return true;
}

using KernelCheck = std::function<bool(const std::vector<Vector>&)>;

// Exact elimination over Q(zeta) of every row; the slow reference path.
std::vector<Vector> exact_kernel(const System& sys, const FieldDescriptor& values) {
  std::vector<Vector> rows;
  std::size_t rank_so_far = 0;
  std::vector<Vector> reduced;
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < sys.rows && rank_so_far < sys.cols; ++r) {
    Vector row;
    row.reserve(sys.cols);
    for (std::size_t c = 0; c < sys.cols; ++c) row.push_back(zeta_pow(values, sys.exponent(r, c)));
    for (std::size_t b = 0; b < reduced.size(); ++b) {
      const FieldScalar f = row[pivots[b]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < sys.cols; ++c) {
        if (!reduced[b][c].is_zero()) row[c] -= f * reduced[b][c];
      }
    }
    std::size_t lead = sys.cols;
    for (std::size_t c = 0; c < sys.cols; ++c) {
      if (!row[c].is_zero()) {
        lead = c;
        break;
      }
    }
    if (lead == sys.cols) continue;
    row = scale(row[lead].inverse(), row);
    reduced.push_back(row);
    pivots.push_back(lead);
    ++rank_so_far;
  }
  if (reduced.empty()) {
    std::vector<Vector> out;
    for (std::size_t c = 0; c < sys.cols; ++c) out.push_back(unit_vector(values, sys.cols, c));
    return out;
  }
  return kernel_basis(ExactMatrix::from_rows(values, sys.cols, reduced));
}

std::vector<Vector> modular_kernel(const System& sys, const FieldDescriptor& values, const KernelCheck& check,
                                   std::size_t& primes_used) {
  const std::uint32_t p = sys.p;
  const std::size_t k = sys.cols;
  PrimeSource primes(p);
  const ModPrime first = primes.next();
  const std::vector<std::size_t> chosen = select_rows(sys, first);
  primes_used = 1;
  if (chosen.size() == k) return {};
  if (chosen.empty()) {
    std::vector<Vector> out;
    for (std::size_t c = 0; c < k; ++c) out.push_back(unit_vector(values, k, c));
    return out;
  }

  std::vector<std::size_t> ref_pivots;
  std::vector<std::size_t> free_cols;
  // residues[v][i][t]: coordinate t of the entry at pivot column i of kernel vector v
  std::vector<std::vector<std::vector<mpz_class>>> crt;
  mpz_class modulus = 1;
  std::vector<Vector> previous;

  ModPrime mp = first;
  constexpr std::size_t kMaxPrimes = 48;
  for (std::size_t attempt = 0; attempt < kMaxPrimes; ++attempt) {
    if (attempt > 0) {
      mp = primes.next();
      ++primes_used;
    }
    const u64 q = mp.q;
    // images[v][i][j]: embedding j of the entry at pivot i of kernel vector v
    std::vector<std::vector<std::vector<u64>>> images;
    bool lucky = true;
    for (std::uint32_t j = 1; j < p && lucky; ++j) {
      std::vector<u64> powers(p);
      for (std::uint32_t e = 0; e < p; ++e) powers[e] = pow_mod(mp.omega, u64{e} * j, q);
      std::vector<std::vector<u64>> a(chosen.size(), std::vector<u64>(k));
      for (std::size_t r = 0; r < chosen.size(); ++r) {
        for (std::size_t c = 0; c < k; ++c) a[r][c] = powers[sys.exponent(chosen[r], c)];
      }
      const ModRref red = rref_mod(std::move(a), k, q);
      if (ref_pivots.empty()) {
        if (red.pivots.size() != chosen.size()) {
          lucky = false;
          break;
        }
        ref_pivots = red.pivots;
        std::vector<bool> is_pivot(k, false);
        for (std::size_t c : ref_pivots) is_pivot[c] = true;
        for (std::size_t c = 0; c < k; ++c) {
          if (!is_pivot[c]) free_cols.push_back(c);
        }
        crt.assign(free_cols.size(),
                   std::vector<std::vector<mpz_class>>(ref_pivots.size(), std::vector<mpz_class>(p - 1, 0)));
      } else if (red.pivots != ref_pivots) {
        lucky = false;
        break;
      }
      if (images.empty()) {
        images.assign(free_cols.size(), std::vector<std::vector<u64>>(ref_pivots.size(), std::vector<u64>(p - 1)));
      }
      for (std::size_t v = 0; v < free_cols.size(); ++v) {
        for (std::size_t i = 0; i < ref_pivots.size(); ++i) {
          const u64 x = red.rows[i][free_cols[v]];
          images[v][i][j - 1] = x == 0 ? 0 : q - x;
        }
      }
    }
    if (!lucky) continue;

    const auto vinv = embedding_inverse(p, mp);
    const mpz_class qz(static_cast<unsigned long>(q));
    mpz_class m_inv_q;  // modulus^-1 mod q
    {
      mpz_class mm = modulus % qz;
      mpz_invert(m_inv_q.get_mpz_t(), mm.get_mpz_t(), qz.get_mpz_t());
    }
    for (std::size_t v = 0; v < free_cols.size(); ++v) {
      for (std::size_t i = 0; i < ref_pivots.size(); ++i) {
        for (std::size_t t = 0; t + 1 < p; ++t) {
          u64 coord = 0;
          for (std::size_t j = 0; j + 1 < p; ++j) coord = (coord + mul_mod(vinv[t][j], images[v][i][j], q)) % q;
          // CRT: x = x_old + modulus * ((coord - x_old) * modulus^-1 mod q)
          mpz_class& x = crt[v][i][t];
          mpz_class diff = mpz_class(static_cast<unsigned long>(coord)) - x;
          diff %= qz;
          if (diff < 0) diff += qz;
          mpz_class h = diff * m_inv_q % qz;
          x += modulus * h;
        }
      }
    }
    modulus *= qz;

    std::vector<Vector> candidate;
    bool ok = true;
    for (std::size_t v = 0; v < free_cols.size() && ok; ++v) {
      Vector vec = zero_vector(values, k);
      vec[free_cols[v]] = FieldScalar::one(values);
      for (std::size_t i = 0; i < ref_pivots.size() && ok; ++i) {
        std::vector<mpq_class> coords(p - 1);
        for (std::size_t t = 0; t + 1 < p && ok; ++t) ok = rational_reconstruct(crt[v][i][t], modulus, coords[t]);
        if (ok) vec[ref_pivots[i]] = FieldScalar::from_coordinates(p, coords);
      }
      candidate.push_back(std::move(vec));
    }
    if (!ok) continue;
    if (candidate == previous || attempt >= 1) {
      if (check(candidate)) return candidate;
    }
    previous = std::move(candidate);
  }
  // Either every prime was unlucky or the selected rows missed an
  // independent row; fall back to exact elimination.
  return exact_kernel(sys, values);
}

}  // namespace

SpaceBasis space_basis(const SpacePtr& space, const Arrangement& xs, const Arrangement& ys, OracleMethod method) {
  const auto& sp = *space;
  if (xs.side() != Side::E || ys.side() != Side::F) throw InvalidInput("space_basis expects xs on E and ys on F");
  const std::vector<bool> in_x = sp.indicator(xs);
  const std::vector<bool> in_y = sp.indicator(ys);
  std::vector<std::size_t> x_pts;
  std::vector<std::size_t> y_pts;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (in_x[i]) x_pts.push_back(i);
    if (in_y[i]) y_pts.push_back(i);
  }

  SpaceBasis result;
  const bool spectral = y_pts.size() < x_pts.size() && y_pts.size() < sp.size();
  result.parametrization = spectral ? "spectrum" : "support";

  System sys;
  sys.p = sp.p();
  const std::vector<std::size_t>& unknowns = spectral ? y_pts : x_pts;
  const std::vector<bool>& constrained = spectral ? in_x : in_y;
  sys.cols = unknowns.size();
  for (std::size_t c : unknowns) sys.col_points.push_back(sp.point(c));
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (constrained[i]) continue;
    const Point w = sp.point(i);
    // support: row y, e = x . (B y); spectrum: row x, e = -(B^T x) . y
    sys.row_keys.push_back(spectral ? sp.apply_pairing_transposed(w) : sp.apply_pairing(w));
  }
  sys.rows = sys.row_keys.size();
  sys.sign = spectral ? -1 : 1;

  auto to_distribution = [&](const Vector& v) {
    std::vector<FieldScalar> vals(sp.size(), FieldScalar(sp.values()));
    for (std::size_t c = 0; c < unknowns.size(); ++c) vals[unknowns[c]] = v[c];
    if (!spectral) return Distribution(space, Side::E, std::move(vals));
    return fourier_inverse(Distribution(space, Side::F, std::move(vals)));
  };
  auto verified = [&](const std::vector<Vector>& kernel) {
    for (const auto& v : kernel) {
      const Distribution d = to_distribution(v);
      if (!d.supported_in(in_x) || !fourier(d).supported_in(in_y)) return false;
    }
    return true;
  };

  std::vector<Vector> kernel;
  if (sys.cols > 0) {
    if (method == OracleMethod::Exact) {
      kernel = exact_kernel(sys, sp.values());
    } else {
      kernel = modular_kernel(sys, sp.values(), verified, result.primes_used);
    }
  }
  std::vector<Distribution> family;
  family.reserve(kernel.size());
  for (const auto& v : kernel) family.push_back(to_distribution(v));
  for (const auto& d : family) {
    if (!d.supported_in(in_x) || !fourier(d).supported_in(in_y)) {
      throw VerificationFailed("oracle produced a distribution outside the constrained space");
    }
  }
  result.basis = echelon_basis(family);
  result.dimension = result.basis.size();
  if (result.dimension != kernel.size()) throw VerificationFailed("oracle kernel vectors are dependent");
  return result;
}

std::vector<Distribution> echelon_basis(const std::vector<Distribution>& family) {
  if (family.empty()) return {};
  const auto& space = family.front().space();
  const Side side = family.front().side();
  const auto& sp = *space;
  std::vector<bool> used(sp.size(), false);
  for (const auto& d : family) {
    if (d.side() != side) throw InvalidInput("echelon_basis: mixed sides");
    for (std::size_t i : d.support()) used[i] = true;
  }
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (used[i]) cols.push_back(i);
  }
  ExactMatrix m(sp.values(), family.size(), cols.size());
  for (std::size_t r = 0; r < family.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = family[r][cols[c]];
  }
  const RrefResult red = rref(m);
  std::vector<Distribution> out;
  for (std::size_t r = 0; r < red.rank; ++r) {
    std::vector<FieldScalar> vals(sp.size(), FieldScalar(sp.values()));
    for (std::size_t c = 0; c < cols.size(); ++c) vals[cols[c]] = red.echelon(r, c);
    out.emplace_back(space, side, std::move(vals));
  }
  return out;
}

std::size_t family_rank(const std::vector<Distribution>& family) { return echelon_basis(family).size(); }

bool in_span(const std::vector<Distribution>& echelon, const Distribution& d) {
  Distribution rest = d;
  for (const auto& b : echelon) {
    const auto supp = b.support();
    if (supp.empty()) continue;
    const std::size_t lead = supp.front();
    const FieldScalar c = rest[lead];
    if (c.is_zero()) continue;
    rest -= c * b;
  }
  return rest.is_zero();
}

}  // namespace affrig
