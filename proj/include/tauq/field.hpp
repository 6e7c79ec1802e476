#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <string>

#include "tauq/error.hpp"

namespace tauq {

/// Exact rationals, always in lowest terms with positive denominator.
/// Expression templates are disabled so arithmetic yields plain values.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Element of a prime field F_p. Every value carries its modulus, so
/// elements of different fields may coexist in one process; mixing them in
/// one operation is an error.
class Fp {
 public:
  Fp(long long value, long long p) : p_(p) {
    if (p < 2) throw input_error("prime field modulus must be >= 2");
    v_ = value % p;
    if (v_ < 0) v_ += p;
  }

  long long value() const { return v_; }
  long long modulus() const { return p_; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    a.check(b);
    return Fp(a.v_ + b.v_, a.p_);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    a.check(b);
    return Fp(a.v_ - b.v_, a.p_);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    a.check(b);
    return Fp(a.v_ * b.v_, a.p_);
  }
  Fp operator-() const { return Fp(-v_, p_); }
  friend bool operator==(const Fp& a, const Fp& b) {
    a.check(b);
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

 private:
  void check(const Fp& other) const {
    if (p_ != other.p_) throw internal_error("mixed prime field moduli");
  }

  long long v_;
  long long p_;
};

namespace detail {
inline long long mod_inverse(long long a, long long p) {
  long long t = 0, new_t = 1, r = p, new_r = a % p;
  if (new_r < 0) new_r += p;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw input_error("element not invertible mod " + std::to_string(p));
  return t < 0 ? t + p : t;
}
}  // namespace detail

/// Uniform scalar interface. All constants are minted from a sample element
/// so that runtime-modulus fields work inside generic code; the sample is
/// ignored for the rationals.
template <class K>
struct field_ops;

template <>
struct field_ops<Rational> {
  static Rational zero(const Rational&) { return Rational(0); }
  static Rational one(const Rational&) { return Rational(1); }
  static Rational from_ratio(const Rational&, long long num, long long den) {
    if (den == 0) throw input_error("zero denominator");
    return Rational(num, den);
  }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational inv(const Rational& x) {
    if (x.is_zero()) throw input_error("division by zero");
    return Rational(1) / x;
  }
  static long long characteristic(const Rational&) { return 0; }
  static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct field_ops<Fp> {
  static Fp zero(const Fp& sample) { return Fp(0, sample.modulus()); }
  static Fp one(const Fp& sample) { return Fp(1, sample.modulus()); }
  static Fp from_ratio(const Fp& sample, long long num, long long den) {
    const long long p = sample.modulus();
    if (den % p == 0) throw input_error("denominator vanishes mod " + std::to_string(p));
    return Fp(num, p) * Fp(detail::mod_inverse(den, p), p);
  }
  static bool is_zero(const Fp& x) { return x.value() == 0; }
  static Fp inv(const Fp& x) {
    if (x.value() == 0) throw input_error("division by zero");
    return Fp(detail::mod_inverse(x.value(), x.modulus()), x.modulus());
  }
  static long long characteristic(const Fp& sample) { return sample.modulus(); }
  static std::string str(const Fp& x) { return std::to_string(x.value()); }
};

template <class K>
concept scalar_field = requires(const K& a, const K& b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a* b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  { field_ops<K>::zero(a) } -> std::convertible_to<K>;
  { field_ops<K>::one(a) } -> std::convertible_to<K>;
  { field_ops<K>::inv(a) } -> std::convertible_to<K>;
  { field_ops<K>::is_zero(a) } -> std::convertible_to<bool>;
};

}  // namespace tauq
