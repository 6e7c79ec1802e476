#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <vector>

#include "tauq/field.hpp"

namespace tauq {

/// Dense univariate polynomial; c[i] is the coefficient of t^i, trailing
/// zeros trimmed (zero polynomial has empty c). Only the small amount of
/// polynomial arithmetic the locality certificates need lives here.
template <scalar_field K>
struct Poly {
  K one;
  std::vector<K> c;

  bool is_zero() const { return c.empty(); }
  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }

  void trim() {
    while (!c.empty() && field_ops<K>::is_zero(c.back())) c.pop_back();
  }
};

template <scalar_field K>
Poly<K> make_poly(const K& one, std::vector<K> coeffs) {
  Poly<K> p{one, std::move(coeffs)};
  p.trim();
  return p;
}

template <scalar_field K>
Poly<K> poly_sub(const Poly<K>& a, const Poly<K>& b) {
  std::vector<K> c(std::max(a.c.size(), b.c.size()), field_ops<K>::zero(a.one));
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = c[i] + a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] = c[i] - b.c[i];
  return make_poly(a.one, std::move(c));
}

template <scalar_field K>
Poly<K> poly_mul(const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero() || b.is_zero()) return make_poly(a.one, {});
  std::vector<K> c(a.c.size() + b.c.size() - 1, field_ops<K>::zero(a.one));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] = c[i + j] + a.c[i] * b.c[j];
  return make_poly(a.one, std::move(c));
}

template <scalar_field K>
Poly<K> poly_scaled(const Poly<K>& a, const K& s) {
  std::vector<K> c = a.c;
  for (K& x : c) x = x * s;
  return make_poly(a.one, std::move(c));
}

template <scalar_field K>
Poly<K> poly_monic(const Poly<K>& a) {
  if (a.is_zero()) return a;
  return poly_scaled(a, field_ops<K>::inv(a.c.back()));
}

template <scalar_field K>
std::pair<Poly<K>, Poly<K>> poly_divmod(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw input_error("polynomial division by zero");
  Poly<K> rem = a;
  std::vector<K> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1,
                   field_ops<K>::zero(a.one));
  const K lead_inv = field_ops<K>::inv(b.c.back());
  while (!rem.is_zero() && rem.c.size() >= b.c.size()) {
    const std::size_t shift = rem.c.size() - b.c.size();
    const K f = rem.c.back() * lead_inv;
    q[shift] = q[shift] + f;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      rem.c[shift + i] = rem.c[shift + i] - f * b.c[i];
    rem.trim();
  }
  return {make_poly(a.one, std::move(q)), rem};
}

template <scalar_field K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

/// Extended Euclid: returns (g, u, v) monic g with u*a + v*b = g.
template <scalar_field K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_ext_gcd(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r0 = a, r1 = b;
  Poly<K> s0 = make_poly(a.one, {field_ops<K>::one(a.one)}), s1 = make_poly(a.one, {});
  Poly<K> t0 = make_poly(a.one, {}), t1 = make_poly(a.one, {field_ops<K>::one(a.one)});
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, poly_sub(s0, poly_mul(q, s1)));
    t0 = std::exchange(t1, poly_sub(t0, poly_mul(q, t1)));
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const K inv = field_ops<K>::inv(r0.c.back());
  return {poly_scaled(r0, inv), poly_scaled(s0, inv), poly_scaled(t0, inv)};
}

template <scalar_field K>
K poly_eval(const Poly<K>& p, const K& x) {
  K acc = field_ops<K>::zero(p.one);
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

struct RootScan {
  bool complete;  // true when the scan provably found every root in the field
};

namespace detail {
using BigInt = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
}

/// Roots of p in the coefficient field. Over F_p the scan is complete for
/// small moduli; over the rationals it enumerates the finitely many
/// candidates given by the integerized leading/constant coefficients, which
/// is complete whenever those coefficients factor within the trial bound.
template <scalar_field K>
std::pair<std::vector<K>, RootScan> poly_roots(const Poly<K>& p);

inline std::vector<detail::BigInt> small_divisors(detail::BigInt n, bool& complete) {
  using detail::BigInt;
  if (n < 0) n = -n;
  std::vector<BigInt> divs;
  if (n == 0) {
    complete = true;
    return divs;
  }
  complete = true;
  BigInt d = 1;
  const BigInt bound = 2'000'000;
  for (; d * d <= n; ++d) {
    if (d > bound) {
      complete = false;  // unfactored tail; scan is only partial
      break;
    }
    if (n % d == 0) {
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
    }
  }
  return divs;
}

template <>
inline std::pair<std::vector<Rational>, RootScan> poly_roots<Rational>(
    const Poly<Rational>& p) {
  using detail::BigInt;
  std::vector<Rational> roots;
  if (p.is_zero() || p.degree() == 0) return {roots, {true}};
  // Clear denominators to an integer polynomial.
  BigInt den = 1;
  for (const Rational& x : p.c) den = boost::multiprecision::lcm(den, denominator(x));
  std::vector<BigInt> ic;
  for (const Rational& x : p.c) ic.push_back(numerator(x) * (den / denominator(x)));
  if (poly_eval(p, Rational(0)).is_zero()) roots.push_back(Rational(0));
  bool c1 = true, c2 = true;
  BigInt a0 = ic.front();
  std::size_t low = 0;
  while (a0 == 0 && low + 1 < ic.size()) a0 = ic[++low];
  const auto nums = small_divisors(a0, c1);
  const auto dens = small_divisors(ic.back(), c2);
  for (const auto& n : nums)
    for (const auto& d : dens)
      for (int sign : {1, -1}) {
        Rational cand(sign * n, d);
        if (poly_eval(p, cand).is_zero() &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  return {roots, {c1 && c2}};
}

template <>
inline std::pair<std::vector<Fp>, RootScan> poly_roots<Fp>(const Poly<Fp>& p) {
  std::vector<Fp> roots;
  if (p.is_zero() || p.degree() == 0) return {roots, {true}};
  const long long q = p.one.modulus();
  if (q > 100000) return {roots, {false}};
  for (long long c = 0; c < q; ++c) {
    Fp cand(c, q);
    if (field_ops<Fp>::is_zero(poly_eval(p, cand))) roots.push_back(cand);
  }
  return {roots, {true}};
}

template <scalar_field K>
Poly<K> poly_mod(const Poly<K>& a, const Poly<K>& m) {
  return poly_divmod(a, m).second;
}

template <scalar_field K>
Poly<K> poly_modexp(Poly<K> base, long long e, const Poly<K>& m) {
  Poly<K> acc = make_poly(base.one, {field_ops<K>::one(base.one)});
  base = poly_mod(base, m);
  while (e > 0) {
    if (e & 1) acc = poly_mod(poly_mul(acc, base), m);
    base = poly_mod(poly_mul(base, base), m);
    e >>= 1;
  }
  return acc;
}

/// Irreducibility over the coefficient field; nullopt when undecidable with
/// the methods here (rational polynomials of degree >= 4, or degree 2-3 whose
/// coefficients resisted the divisor scan).
template <scalar_field K>
std::optional<bool> poly_irreducible(const Poly<K>& m);

template <>
inline std::optional<bool> poly_irreducible<Rational>(const Poly<Rational>& m) {
  const std::size_t d = m.degree();
  if (d == 0) return false;
  if (d == 1) return true;
  auto [roots, scan] = poly_roots(m);
  if (!roots.empty()) return false;
  if (d <= 3 && scan.complete) return true;  // no linear factor means irreducible
  return std::nullopt;
}

template <>
inline std::optional<bool> poly_irreducible<Fp>(const Poly<Fp>& m) {
  const std::size_t d = m.degree();
  if (d == 0) return false;
  if (d == 1) return true;
  const long long p = m.one.modulus();
  const Poly<Fp> x = make_poly(m.one, {Fp(0, p), Fp(1, p)});
  // x^(p^e) mod m by iterated Frobenius.
  auto frob_pow = [&](std::size_t e) {
    Poly<Fp> f = x;
    for (std::size_t i = 0; i < e; ++i) f = poly_modexp(f, p, m);
    return f;
  };
  // Rabin's test: irreducible iff x^(p^d) == x mod m and the gcd below is
  // trivial for every maximal proper divisor d/q.
  if (!poly_sub(frob_pow(d), x).is_zero()) return false;
  for (std::size_t q = 2; q <= d; ++q) {
    if (d % q != 0) continue;
    bool is_prime = true;
    for (std::size_t t = 2; t * t <= q; ++t)
      if (q % t == 0) is_prime = false;
    if (!is_prime) continue;
    Poly<Fp> g = poly_gcd(poly_sub(frob_pow(d / q), x), m);
    if (g.degree() >= 1) return false;
  }
  return true;
}

}  // namespace tauq
