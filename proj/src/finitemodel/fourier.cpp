// Character sums over F_p^n, computed axis by axis on integer coefficient
// arrays of length p (coordinates in 1, zeta, ..., zeta^(p-1)) so that
// multiplication by zeta^k is a rotation. Reduction modulo Phi_p happens once
// per output value.

#include <utility>

#include "affrig/finitemodel.hpp"

namespace affrig {
namespace {

struct IntegerField {
  std::size_t p = 0;
  std::size_t points = 0;
  std::vector<mpz_class> coeff;  // points * p
  mpz_class den = 1;             // common denominator

  mpz_class* at(std::size_t idx) { return coeff.data() + idx * p; }
};

IntegerField to_integer_field(const Distribution& d) {
  const auto& sp = *d.space();
  IntegerField f;
  f.p = sp.p();
  f.points = sp.size();
  f.coeff.assign(f.points * f.p, 0);
  for (const auto& v : d.values()) {
    if (v.is_zero()) continue;
    const auto& c = v.cyclotomic_payload();
    mpz_lcm(f.den.get_mpz_t(), f.den.get_mpz_t(), c.den.get_mpz_t());
  }
  for (std::size_t i = 0; i < f.points; ++i) {
    if (d[i].is_zero()) continue;
    const auto& c = d[i].cyclotomic_payload();
    const mpz_class factor = f.den / c.den;
    mpz_class* dst = f.at(i);
    for (std::size_t j = 0; j + 1 < f.p; ++j) dst[j] = c.num[j] * factor;
  }
  return f;
}

// W(z) = sum_x zeta^(sign * x.z) v(x) with the standard dot product.
void standard_dft(IntegerField& f, std::size_t n, int sign) {
  const std::size_t p = f.p;
  std::vector<mpz_class> line(p * p);
  std::vector<mpz_class> out(p * p);
  std::vector<bool> nonzero(p);
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < n; ++axis) {
    // axis with the given stride; the index decomposes as hi * (stride * p) + digit * stride + lo
    const std::size_t block = stride * p;
    for (std::size_t hi = 0; hi < f.points; hi += block) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        bool any = false;
        for (std::size_t j = 0; j < p; ++j) {
          const mpz_class* src = f.at(hi + j * stride + lo);
          nonzero[j] = false;
          for (std::size_t t = 0; t < p; ++t) {
            line[j * p + t] = src[t];
            if (sgn(src[t]) != 0) nonzero[j] = true;
          }
          any = any || nonzero[j];
        }
        if (!any) continue;
        for (auto& x : out) x = 0;
        for (std::size_t k = 0; k < p; ++k) {
          mpz_class* dst = out.data() + k * p;
          for (std::size_t j = 0; j < p; ++j) {
            if (!nonzero[j]) continue;
            const long long raw = sign * static_cast<long long>(j * k % p);
            const std::size_t shift = static_cast<std::size_t>((raw % static_cast<long long>(p) + p) % p);
            const mpz_class* src = line.data() + j * p;
            for (std::size_t t = 0; t < p; ++t) {
              if (sgn(src[t]) == 0) continue;
              std::size_t to = t + shift;
              if (to >= p) to -= p;
              dst[to] += src[t];
            }
          }
        }
        for (std::size_t k = 0; k < p; ++k) {
          mpz_class* dst = f.at(hi + k * stride + lo);
          for (std::size_t t = 0; t < p; ++t) dst[t] = out[k * p + t];
        }
      }
    }
    stride *= p;
  }
}

FieldScalar to_scalar(const mpz_class* full, std::size_t p, const mpz_class& den) {
  detail::CyclotomicValue c;
  c.num.resize(p - 1);
  const mpz_class& top = full[p - 1];
  for (std::size_t j = 0; j + 1 < p; ++j) c.num[j] = full[j] - top;
  c.den = den;
  return FieldScalar::from_payload(static_cast<std::uint32_t>(p), std::move(c));
}

// out(w) = W(A w) with A = B when the result lives on F and A = B^T on E.
Distribution transform(const Distribution& d, int sign, bool normalize) {
  const auto& sp = *d.space();
  IntegerField f = to_integer_field(d);
  standard_dft(f, sp.dim(), sign);
  mpz_class den = f.den;
  if (normalize) {
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), sp.p(), sp.dim());
    den *= pn;
  }
  const Side target = opposite(d.side());
  std::vector<FieldScalar> out;
  out.reserve(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const Point w = sp.point(i);
    const Point z = target == Side::F ? sp.apply_pairing(w) : sp.apply_pairing_transposed(w);
    out.push_back(to_scalar(f.at(sp.index(z)), f.p, den));
  }
  return Distribution(d.space(), target, std::move(out));
}

}  // namespace

Distribution fourier(const Distribution& d) { return transform(d, +1, false); }

Distribution fourier_inverse(const Distribution& d) { return transform(d, -1, true); }

}  // namespace affrig
