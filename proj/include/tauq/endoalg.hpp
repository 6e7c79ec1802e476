#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tauq/matrix.hpp"
#include "tauq/poly.hpp"
#include "tauq/tri.hpp"

namespace tauq {

/// A finite-dimensional unital associative algebra given by structure
/// constants, the common carrier for e_x L e_x corner algebras and
/// endomorphism algebras. Radical computation uses the trace form of the
/// regular representation, valid in characteristic 0 or p > dim; locality
/// certificates come from idempotent hunting and minimal-polynomial fields.
template <scalar_field K>
class FinDimAlgebra {
 public:
  FinDimAlgebra(K one, std::vector<std::vector<std::vector<K>>> products,
                std::vector<K> identity)
      : one_(std::move(one)), products_(std::move(products)), identity_(std::move(identity)) {
    dim_ = identity_.size();
  }

  std::size_t dim() const { return dim_; }
  const K& one() const { return one_; }
  const std::vector<K>& identity() const { return identity_; }

  std::vector<K> zero_vec() const {
    return std::vector<K>(dim_, field_ops<K>::zero(one_));
  }

  std::vector<K> unit_vec(std::size_t i) const {
    auto v = zero_vec();
    v[i] = field_ops<K>::one(one_);
    return v;
  }

  std::vector<K> mul(const std::vector<K>& a, const std::vector<K>& b) const {
    auto out = zero_vec();
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_ops<K>::is_zero(a[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (field_ops<K>::is_zero(b[j])) continue;
        const K f = a[i] * b[j];
        const auto& p = products_[i][j];
        for (std::size_t t = 0; t < dim_; ++t) out[t] = out[t] + f * p[t];
      }
    }
    return out;
  }

  static bool vec_is_zero(const std::vector<K>& v) {
    for (const K& x : v)
      if (!field_ops<K>::is_zero(x)) return false;
    return true;
  }

  bool vec_eq(const std::vector<K>& a, const std::vector<K>& b) const {
    for (std::size_t i = 0; i < dim_; ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }

  bool is_idempotent(const std::vector<K>& v) const { return vec_eq(mul(v, v), v); }

  Matrix<K> left_mult(const std::vector<K>& a) const {
    Matrix<K> m(one_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      const auto col = mul(a, unit_vec(j));
      for (std::size_t i = 0; i < dim_; ++i) m.set(i, j, col[i]);
    }
    return m;
  }

  /// Basis of the Jacobson radical as coordinate vectors, or nullopt when
  /// the characteristic is positive and too small for the trace form.
  std::optional<std::vector<std::vector<K>>> radical_basis() const {
    const long long p = field_ops<K>::characteristic(one_);
    if (p > 0 && static_cast<std::size_t>(p) <= dim_) return std::nullopt;
    std::vector<Matrix<K>> lm;
    lm.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) lm.push_back(left_mult(unit_vec(i)));
    Matrix<K> gram(one_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j) {
        K tr = field_ops<K>::zero(one_);
        for (std::size_t r = 0; r < dim_; ++r)
          for (std::size_t c = 0; c < dim_; ++c) tr = tr + lm[i].at(r, c) * lm[j].at(c, r);
        gram.set(i, j, tr);
        gram.set(j, i, tr);
      }
    const Matrix<K> ker = kernel_basis(gram);
    std::vector<std::vector<K>> basis;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      std::vector<K> v;
      v.reserve(dim_);
      for (std::size_t r = 0; r < dim_; ++r) v.push_back(ker.at(r, c));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  struct Quotient {
    FinDimAlgebra alg;
    Matrix<K> projection;  // quotient coords from ambient coords (s x d)
    Matrix<K> section;     // coset representatives (d x s)
  };

  /// Quotient by a (two-sided) ideal spanned by the given independent
  /// coordinate vectors.
  Quotient quotient(const std::vector<std::vector<K>>& ideal) const {
    const std::size_t r = ideal.size();
    Matrix<K> big(one_, dim_, r + dim_);
    for (std::size_t c = 0; c < r; ++c)
      for (std::size_t i = 0; i < dim_; ++i) big.set(i, c, ideal[c][i]);
    for (std::size_t i = 0; i < dim_; ++i)
      big.set(i, r + i, field_ops<K>::one(one_));
    const Echelon<K> e = rref(big);
    std::vector<std::size_t> comp;  // unit vectors completing the ideal to a basis
    for (std::size_t p : e.pivots)
      if (p >= r) comp.push_back(p - r);
    const std::size_t s = comp.size();
    Matrix<K> basis_change(one_, dim_, dim_);
    for (std::size_t c = 0; c < r; ++c)
      for (std::size_t i = 0; i < dim_; ++i) basis_change.set(i, c, ideal[c][i]);
    for (std::size_t c = 0; c < s; ++c)
      basis_change.set(comp[c], r + c, field_ops<K>::one(one_));
    const auto inv = inverse(basis_change);
    if (!inv) throw internal_error("ideal basis not independent");
    Matrix<K> projection(one_, s, dim_);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < dim_; ++j) projection.set(i, j, inv->at(r + i, j));
    Matrix<K> section(one_, dim_, s);
    for (std::size_t c = 0; c < s; ++c)
      section.set(comp[c], c, field_ops<K>::one(one_));
    auto project = [&](const std::vector<K>& v) {
      std::vector<K> out(s, field_ops<K>::zero(one_));
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out[i] = out[i] + projection.at(i, j) * v[j];
      return out;
    };
    std::vector<std::vector<std::vector<K>>> qprod(
        s, std::vector<std::vector<K>>(s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j)
        qprod[i][j] = project(mul(section_col(section, i), section_col(section, j)));
    return {FinDimAlgebra(one_, std::move(qprod), project(identity_)),
            std::move(projection), std::move(section)};
  }

  /// Monic minimal polynomial of an element.
  Poly<K> min_poly(const std::vector<K>& a) const {
    std::vector<std::vector<K>> powers{identity_};
    for (;;) {
      Matrix<K> v(one_, dim_, powers.size());
      for (std::size_t c = 0; c < powers.size(); ++c)
        for (std::size_t i = 0; i < dim_; ++i) v.set(i, c, powers[c][i]);
      std::vector<K> next = mul(powers.back(), a);
      Matrix<K> rhs(one_, dim_, 1);
      for (std::size_t i = 0; i < dim_; ++i) rhs.set(i, 0, next[i]);
      if (auto sol = solve(v, rhs)) {
        std::vector<K> coeffs;
        for (std::size_t i = 0; i < powers.size(); ++i) coeffs.push_back(-sol->at(i, 0));
        coeffs.push_back(field_ops<K>::one(one_));
        return make_poly(one_, std::move(coeffs));
      }
      powers.push_back(std::move(next));
      if (powers.size() > dim_ + 1) throw internal_error("minimal polynomial overflow");
    }
  }

  struct Locality {
    Tri verdict;
    std::optional<std::vector<K>> idempotent;  // witness for verdict == no
  };

  /// Is this a local algebra? Certified yes when the radical has codimension
  /// one or the semisimple quotient is a field generated by one element;
  /// certified no with an explicit nontrivial idempotent; undecided when the
  /// characteristic is too small or the factoring tools run out.
  Locality locality(std::uint64_t seed = 1) const {
    if (dim_ == 1) return {Tri::yes, std::nullopt};
    for (std::size_t i = 0; i < dim_; ++i) {
      const auto v = unit_vec(i);
      if (is_idempotent(v) && !vec_is_zero(v) && !vec_eq(v, identity_))
        return {Tri::no, v};
    }
    const auto rad = radical_basis();
    if (!rad) return {Tri::undecided, std::nullopt};
    if (rad->size() + 1 == dim_) return {Tri::yes, std::nullopt};
    const Quotient q = quotient(*rad);
    const std::size_t s = q.alg.dim();

    std::vector<std::vector<K>> candidates;
    for (std::size_t i = 0; i < s; ++i) candidates.push_back(q.alg.unit_vec(i));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> coeff(-3, 3);
    for (int t = 0; t < 8; ++t) {
      std::vector<K> v;
      for (std::size_t i = 0; i < s; ++i)
        v.push_back(field_ops<K>::from_ratio(one_, coeff(rng), 1));
      candidates.push_back(std::move(v));
    }

    for (const auto& u : candidates) {
      if (q.alg.vec_is_zero(u) || q.alg.vec_eq(u, q.alg.identity())) continue;
      const Poly<K> m = q.alg.min_poly(u);
      // A root c with simple multiplicity splits m coprimely as (t-c) * rest.
      auto [roots, scan] = poly_roots(m);
      for (const K& c : roots) {
        const Poly<K> lin =
            make_poly(one_, {-c, field_ops<K>::one(one_)});
        const Poly<K> rest = poly_divmod(m, lin).first;
        if (field_ops<K>::is_zero(poly_eval(rest, c))) continue;  // repeated root
        // e == 0 mod (t-c), e == 1 mod rest gives a nontrivial idempotent.
        auto [g, a, b] = poly_ext_gcd(lin, rest);
        if (g.degree() != 0) continue;
        const Poly<K> e_poly = poly_mod(poly_mul(a, lin), m);
        std::vector<K> e_q = eval_in(q.alg, e_poly, u);
        if (q.alg.vec_is_zero(e_q) || q.alg.vec_eq(e_q, q.alg.identity())) continue;
        // Lift through the radical: e <- 3e^2 - 2e^3 converges since rad is nilpotent.
        std::vector<K> e = apply(q.section, e_q);
        const K three = field_ops<K>::from_ratio(one_, 3, 1);
        const K two = field_ops<K>::from_ratio(one_, 2, 1);
        for (std::size_t it = 0; it < 16 * dim_ + 16 && !is_idempotent(e); ++it) {
          const auto e2 = mul(e, e);
          const auto e3 = mul(e2, e);
          for (std::size_t i = 0; i < dim_; ++i)
            e[i] = three * e2[i] - two * e3[i];
        }
        if (!is_idempotent(e)) throw internal_error("idempotent lifting failed");
        if (vec_is_zero(e) || vec_eq(e, identity_))
          throw internal_error("idempotent lift degenerated");
        return {Tri::no, e};
      }
      if (m.degree() == s) {
        // The quotient is generated by u; irreducibility makes it a field.
        const auto irr = poly_irreducible(m);
        if (irr && *irr) return {Tri::yes, std::nullopt};
      }
    }
    return {Tri::undecided, std::nullopt};
  }

 private:
  static std::vector<K> section_col(const Matrix<K>& section, std::size_t c) {
    std::vector<K> v;
    v.reserve(section.rows());
    for (std::size_t i = 0; i < section.rows(); ++i) v.push_back(section.at(i, c));
    return v;
  }

  std::vector<K> apply(const Matrix<K>& m, const std::vector<K>& v) const {
    std::vector<K> out(m.rows(), field_ops<K>::zero(one_));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out[i] = out[i] + m.at(i, j) * v[j];
    return out;
  }

  static std::vector<K> eval_in(const FinDimAlgebra& alg, const Poly<K>& p,
                                const std::vector<K>& u) {
    std::vector<K> acc = alg.zero_vec();
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
      acc = alg.mul(acc, u);
      for (std::size_t i = 0; i < alg.dim(); ++i)
        acc[i] = acc[i] + *it * alg.identity()[i];
    }
    return acc;
  }

  K one_;
  std::size_t dim_;
  std::vector<std::vector<std::vector<K>>> products_;
  std::vector<K> identity_;
};

}  // namespace tauq
