#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "tauq/algebra.hpp"
#include "tauq/endoalg.hpp"

namespace tauq {

template <scalar_field K>
class Representation;

template <scalar_field K>
using RepPtr = std::shared_ptr<const Representation<K>>;

template <scalar_field K>
bool same_presentation(const BoundQuiverAlgebra<K>& a, const BoundQuiverAlgebra<K>& b) {
  if (&a == &b) return true;
  if (!(a.quiver() == b.quiver()) || a.dim() != b.dim()) return false;
  for (std::uint32_t i = 0; i < a.dim(); ++i)
    if (!(a.basis_word(i) == b.basis_word(i))) return false;
  return field_ops<K>::characteristic(a.field_one()) ==
         field_ops<K>::characteristic(b.field_one());
}

/// Finite-dimensional representation of the bound quiver: a space per vertex
/// and a matrix per arrow. Relation generators are checked exactly on
/// construction.
template <scalar_field K>
class Representation {
 public:
  Representation(AlgebraPtr<K> alg, std::vector<std::size_t> dims,
                 std::vector<Matrix<K>> action)
      : alg_(std::move(alg)), dims_(std::move(dims)), action_(std::move(action)) {
    const Quiver& q = alg_->quiver();
    if (dims_.size() != q.vertex_count() || action_.size() != q.arrow_count())
      throw shape_error("representation data does not match the quiver");
    for (std::size_t a = 0; a < action_.size(); ++a)
      if (action_[a].rows() != dims_[q.arrow(a).tgt] ||
          action_[a].cols() != dims_[q.arrow(a).src])
        throw shape_error("arrow matrix shape mismatch: " + q.arrow(a).id);
    check_relations();
  }

  const AlgebraPtr<K>& algebra() const { return alg_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim_at(std::size_t v) const { return dims_[v]; }
  std::size_t total_dim() const {
    std::size_t t = 0;
    for (std::size_t d : dims_) t += d;
    return t;
  }
  bool is_zero_module() const { return total_dim() == 0; }
  const Matrix<K>& action(std::size_t arrow) const { return action_[arrow]; }
  const K& one() const { return alg_->field_one(); }

  Matrix<K> eval_path(const Path& p) const {
    const Quiver& q = alg_->quiver();
    Matrix<K> m = Matrix<K>::identity(one(), dims_[p.source()]);
    for (std::size_t a : p.arrows()) m = action_[a] * m;
    return m;
  }

  /// Action of an algebra element on one vertex component: the element must
  /// be supported on paths src -> tgt.
  Matrix<K> eval_element(const AlgebraElement<K>& u, std::size_t src,
                         std::size_t tgt) const {
    Matrix<K> m(one(), dims_[tgt], dims_[src]);
    for (const auto& [id, c] : u.coords()) {
      const Path& w = alg_->basis_word(id);
      if (w.source() != src || w.target(alg_->quiver()) != tgt)
        throw shape_error("element not supported on the requested pair");
      m = m + eval_path(w).scaled(c);
    }
    return m;
  }

 private:
  void check_relations() const {
    for (const auto& gen : alg_->relations().generators) {
      if (gen.empty()) continue;
      const Path& first = gen.begin()->first;
      Matrix<K> sum(one(), dims_[first.target(alg_->quiver())], dims_[first.source()]);
      for (const auto& [w, c] : gen) sum = sum + eval_path(w).scaled(c);
      if (!sum.is_zero()) throw input_error("representation violates a relation");
    }
  }

  AlgebraPtr<K> alg_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix<K>> action_;
};

template <scalar_field K>
RepPtr<K> make_rep(AlgebraPtr<K> alg, std::vector<std::size_t> dims,
                   std::vector<Matrix<K>> action) {
  return std::make_shared<const Representation<K>>(std::move(alg), std::move(dims),
                                                   std::move(action));
}

template <scalar_field K>
RepPtr<K> zero_module(const AlgebraPtr<K>& alg) {
  const Quiver& q = alg->quiver();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  std::vector<Matrix<K>> action;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    action.emplace_back(alg->field_one(), 0, 0);
  return make_rep(alg, std::move(dims), std::move(action));
}

template <scalar_field K>
RepPtr<K> make_simple(const AlgebraPtr<K>& alg, std::size_t x) {
  const Quiver& q = alg->quiver();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  dims[x] = 1;
  std::vector<Matrix<K>> action;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    action.emplace_back(alg->field_one(), dims[q.arrow(a).tgt], dims[q.arrow(a).src]);
  return make_rep(alg, std::move(dims), std::move(action));
}

/// P_x: path classes out of x, arrows acting by left composition.
template <scalar_field K>
RepPtr<K> make_projective(const AlgebraPtr<K>& alg, std::size_t x) {
  alg->require_decided();
  const Quiver& q = alg->quiver();
  std::vector<std::size_t> dims(q.vertex_count());
  for (std::size_t y = 0; y < q.vertex_count(); ++y) dims[y] = alg->pair_dim(x, y);
  std::vector<Matrix<K>> action;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    action.push_back(
        alg->left_mult_matrix(alg->arrow_class(a), q.arrow(a).src, q.arrow(a).tgt, x));
  return make_rep(alg, std::move(dims), std::move(action));
}

/// I_x: dual of the path classes into x, arrows acting by the transpose of
/// right composition.
template <scalar_field K>
RepPtr<K> make_injective(const AlgebraPtr<K>& alg, std::size_t x) {
  alg->require_decided();
  const Quiver& q = alg->quiver();
  std::vector<std::size_t> dims(q.vertex_count());
  for (std::size_t y = 0; y < q.vertex_count(); ++y) dims[y] = alg->pair_dim(y, x);
  std::vector<Matrix<K>> action;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    action.push_back(
        alg->right_mult_matrix(alg->arrow_class(a), q.arrow(a).src, q.arrow(a).tgt, x)
            .transpose());
  return make_rep(alg, std::move(dims), std::move(action));
}

/// Morphism of representations: one matrix per vertex, commuting with every
/// arrow action.
template <scalar_field K>
class RepMorphism {
 public:
  RepMorphism(RepPtr<K> src, RepPtr<K> tgt, std::vector<Matrix<K>> blocks,
              bool validate = true)
      : src_(std::move(src)), tgt_(std::move(tgt)), blocks_(std::move(blocks)) {
    const Quiver& q = src_->algebra()->quiver();
    if (!same_presentation(*src_->algebra(), *tgt_->algebra()))
      throw input_error("morphism between representations of different algebras");
    if (blocks_.size() != q.vertex_count()) throw shape_error("morphism block count");
    for (std::size_t v = 0; v < blocks_.size(); ++v)
      if (blocks_[v].rows() != tgt_->dim_at(v) || blocks_[v].cols() != src_->dim_at(v))
        throw shape_error("morphism block shape at " + q.vertex_id(v));
    if (validate) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        if (!(tgt_->action(a) * blocks_[ar.src] == blocks_[ar.tgt] * src_->action(a)))
          throw input_error("morphism does not commute with arrow " + ar.id);
      }
    }
  }

  const RepPtr<K>& source() const { return src_; }
  const RepPtr<K>& target() const { return tgt_; }
  const Matrix<K>& block(std::size_t v) const { return blocks_[v]; }
  const std::vector<Matrix<K>>& blocks() const { return blocks_; }

  bool is_zero() const {
    for (const auto& b : blocks_)
      if (!b.is_zero()) return false;
    return true;
  }

  friend bool operator==(const RepMorphism& f, const RepMorphism& g) {
    return f.blocks_ == g.blocks_;
  }

 private:
  RepPtr<K> src_, tgt_;
  std::vector<Matrix<K>> blocks_;
};

template <scalar_field K>
RepMorphism<K> identity_morphism(const RepPtr<K>& m) {
  std::vector<Matrix<K>> blocks;
  for (std::size_t v = 0; v < m->dims().size(); ++v)
    blocks.push_back(Matrix<K>::identity(m->one(), m->dim_at(v)));
  return RepMorphism<K>(m, m, std::move(blocks), false);
}

template <scalar_field K>
RepMorphism<K> zero_morphism(const RepPtr<K>& src, const RepPtr<K>& tgt) {
  std::vector<Matrix<K>> blocks;
  for (std::size_t v = 0; v < src->dims().size(); ++v)
    blocks.emplace_back(src->one(), tgt->dim_at(v), src->dim_at(v));
  return RepMorphism<K>(src, tgt, std::move(blocks), false);
}

/// g after f.
template <scalar_field K>
RepMorphism<K> compose(const RepMorphism<K>& g, const RepMorphism<K>& f) {
  if (g.source()->dims() != f.target()->dims())
    throw shape_error("morphism composition shape mismatch");
  std::vector<Matrix<K>> blocks;
  for (std::size_t v = 0; v < f.blocks().size(); ++v)
    blocks.push_back(g.block(v) * f.block(v));
  return RepMorphism<K>(f.source(), g.target(), std::move(blocks), false);
}

template <scalar_field K>
RepMorphism<K> morphism_add(const RepMorphism<K>& f, const RepMorphism<K>& g) {
  std::vector<Matrix<K>> blocks;
  for (std::size_t v = 0; v < f.blocks().size(); ++v)
    blocks.push_back(f.block(v) + g.block(v));
  return RepMorphism<K>(f.source(), f.target(), std::move(blocks), false);
}

template <scalar_field K>
RepMorphism<K> morphism_scaled(const RepMorphism<K>& f, const K& c) {
  std::vector<Matrix<K>> blocks;
  for (std::size_t v = 0; v < f.blocks().size(); ++v) blocks.push_back(f.block(v).scaled(c));
  return RepMorphism<K>(f.source(), f.target(), std::move(blocks), false);
}

/// Basis of Hom(M, N): the solution space of all commuting-square equations,
/// in the deterministic echelon order.
template <scalar_field K>
std::vector<RepMorphism<K>> hom_basis(const RepPtr<K>& m, const RepPtr<K>& n) {
  if (!same_presentation(*m->algebra(), *n->algebra()))
    throw input_error("hom_basis between different algebras");
  const Quiver& q = m->algebra()->quiver();
  const K one = m->one();
  std::vector<std::size_t> offset(q.vertex_count() + 1, 0);
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    offset[v + 1] = offset[v] + n->dim_at(v) * m->dim_at(v);
  const std::size_t unknowns = offset.back();

  std::size_t eqs = 0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    eqs += n->dim_at(q.arrow(a).tgt) * m->dim_at(q.arrow(a).src);
  Matrix<K> sys(one, eqs, unknowns);
  std::size_t row = 0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t x = q.arrow(a).src, y = q.arrow(a).tgt;
    const Matrix<K>& na = n->action(a);
    const Matrix<K>& ma = m->action(a);
    for (std::size_t r = 0; r < n->dim_at(y); ++r)
      for (std::size_t c = 0; c < m->dim_at(x); ++c) {
        // (N(a) f_x)[r][c] - (f_y M(a))[r][c] = 0
        for (std::size_t i = 0; i < n->dim_at(x); ++i)
          sys.set(row, offset[x] + i * m->dim_at(x) + c,
                  sys.at(row, offset[x] + i * m->dim_at(x) + c) + na.at(r, i));
        for (std::size_t j = 0; j < m->dim_at(y); ++j)
          sys.set(row, offset[y] + r * m->dim_at(y) + j,
                  sys.at(row, offset[y] + r * m->dim_at(y) + j) - ma.at(j, c));
        ++row;
      }
  }
  const Matrix<K> ker = kernel_basis(sys);
  std::vector<RepMorphism<K>> basis;
  for (std::size_t col = 0; col < ker.cols(); ++col) {
    std::vector<Matrix<K>> blocks;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      Matrix<K> b(one, n->dim_at(v), m->dim_at(v));
      for (std::size_t i = 0; i < n->dim_at(v); ++i)
        for (std::size_t j = 0; j < m->dim_at(v); ++j)
          b.set(i, j, ker.at(offset[v] + i * m->dim_at(v) + j, col));
      blocks.push_back(std::move(b));
    }
    basis.emplace_back(m, n, std::move(blocks), false);
  }
  return basis;
}

/// Kernel, image and cokernel of a morphism, with induced arrow actions.
template <scalar_field K>
struct ExactParts {
  RepPtr<K> kernel;
  RepMorphism<K> kernel_incl;  // kernel -> source
  RepPtr<K> image;
  RepMorphism<K> image_incl;  // image -> target
  RepPtr<K> cokernel;
  RepMorphism<K> coker_proj;  // target -> cokernel
};

template <scalar_field K>
ExactParts<K> exact_parts(const RepMorphism<K>& f) {
  const RepPtr<K>& m = f.source();
  const RepPtr<K>& n = f.target();
  const AlgebraPtr<K>& alg = m->algebra();
  const Quiver& q = alg->quiver();
  const K one = m->one();

  std::vector<Matrix<K>> kb, ib, qb;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    kb.push_back(kernel_basis(f.block(v)));
    ib.push_back(column_space_basis(f.block(v)));
    qb.push_back(left_kernel(ib.back()));
  }

  auto induced = [&](const RepPtr<K>& amb, const std::vector<Matrix<K>>& cols,
                     std::size_t a) {
    const std::size_t x = q.arrow(a).src, y = q.arrow(a).tgt;
    auto sol = solve(cols[y], amb->action(a) * cols[x]);
    if (!sol) throw internal_error("induced action left the subspace");
    return *sol;
  };

  std::vector<std::size_t> kdims, idims, qdims;
  std::vector<Matrix<K>> kact, iact, qact;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    kdims.push_back(kb[v].cols());
    idims.push_back(ib[v].cols());
    qdims.push_back(qb[v].rows());
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    kact.push_back(induced(m, kb, a));
    iact.push_back(induced(n, ib, a));
    // Cokernel action C(a) solves C(a) Q_x = Q_y N(a).
    const std::size_t x = q.arrow(a).src, y = q.arrow(a).tgt;
    auto sol = solve(qb[x].transpose(), (qb[y] * n->action(a)).transpose());
    if (!sol) throw internal_error("cokernel action is not induced");
    qact.push_back(sol->transpose());
  }

  RepPtr<K> kernel = make_rep(alg, std::move(kdims), std::move(kact));
  RepPtr<K> image = make_rep(alg, std::move(idims), std::move(iact));
  RepPtr<K> coker = make_rep(alg, std::move(qdims), std::move(qact));
  RepMorphism<K> kincl(kernel, m, std::move(kb));
  RepMorphism<K> iincl(image, n, std::move(ib));
  RepMorphism<K> qproj(n, coker, std::move(qb));
  return {std::move(kernel), std::move(kincl), std::move(image),
          std::move(iincl), std::move(coker),  std::move(qproj)};
}

template <scalar_field K>
struct Subobject {
  RepPtr<K> sub;
  RepMorphism<K> incl;
};

template <scalar_field K>
struct QuotientObject {
  RepPtr<K> quot;
  RepMorphism<K> proj;
};

/// rad M: the sum of arrow images at each vertex.
template <scalar_field K>
Subobject<K> radical(const RepPtr<K>& m) {
  const AlgebraPtr<K>& alg = m->algebra();
  const Quiver& q = alg->quiver();
  const K one = m->one();
  std::vector<Matrix<K>> basis;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    Matrix<K> stack(one, m->dim_at(v), 0);
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      if (q.arrow(a).tgt == v) stack = Matrix<K>::hstack(stack, m->action(a));
    basis.push_back(column_space_basis(stack));
  }
  std::vector<std::size_t> dims;
  std::vector<Matrix<K>> act;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) dims.push_back(basis[v].cols());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    auto sol = solve(basis[q.arrow(a).tgt], m->action(a) * basis[q.arrow(a).src]);
    if (!sol) throw internal_error("radical not arrow-stable");
    act.push_back(*sol);
  }
  RepPtr<K> sub = make_rep(alg, std::move(dims), std::move(act));
  RepMorphism<K> incl(sub, m, std::move(basis));
  return {std::move(sub), std::move(incl)};
}

/// top M = M / rad M, a semisimple quotient.
template <scalar_field K>
QuotientObject<K> top(const RepPtr<K>& m) {
  Subobject<K> rad = radical(m);
  const AlgebraPtr<K>& alg = m->algebra();
  const Quiver& q = alg->quiver();
  std::vector<Matrix<K>> proj;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    proj.push_back(left_kernel(rad.incl.block(v)));
    dims.push_back(proj.back().rows());
  }
  std::vector<Matrix<K>> act;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    act.emplace_back(m->one(), dims[q.arrow(a).tgt], dims[q.arrow(a).src]);
    if (!(proj[q.arrow(a).tgt] * m->action(a)).is_zero())
      throw internal_error("top is not semisimple");
  }
  RepPtr<K> quot = make_rep(alg, std::move(dims), std::move(act));
  RepMorphism<K> p(m, quot, std::move(proj));
  return {std::move(quot), std::move(p)};
}

/// soc M = { m : Jm = 0 }: at each vertex the joint kernel of the outgoing
/// arrows.
template <scalar_field K>
Subobject<K> socle(const RepPtr<K>& m) {
  const AlgebraPtr<K>& alg = m->algebra();
  const Quiver& q = alg->quiver();
  const K one = m->one();
  std::vector<Matrix<K>> basis;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    Matrix<K> stack(one, 0, m->dim_at(v));
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      if (q.arrow(a).src == v) stack = Matrix<K>::vstack(stack, m->action(a));
    basis.push_back(kernel_basis(stack));
    dims.push_back(basis.back().cols());
  }
  std::vector<Matrix<K>> act;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    act.emplace_back(one, dims[q.arrow(a).tgt], dims[q.arrow(a).src]);
    if (!(m->action(a) * basis[q.arrow(a).src]).is_zero())
      throw internal_error("socle not annihilated by arrows");
  }
  RepPtr<K> sub = make_rep(alg, std::move(dims), std::move(act));
  RepMorphism<K> incl(sub, m, std::move(basis));
  return {std::move(sub), std::move(incl)};
}

/// The dual representation over the opposite algebra: spaces dualized,
/// arrow matrices transposed.
template <scalar_field K>
RepPtr<K> dualize(const RepPtr<K>& m) {
  const AlgebraPtr<K> op = opposite_algebra(m->algebra());
  std::vector<Matrix<K>> act;
  for (std::size_t a = 0; a < m->algebra()->quiver().arrow_count(); ++a)
    act.push_back(m->action(a).transpose());
  return make_rep(op, m->dims(), std::move(act));
}

/// Contravariant action on morphisms: dualize(f): D(target) -> D(source).
template <scalar_field K>
RepMorphism<K> dualize(const RepMorphism<K>& f) {
  std::vector<Matrix<K>> blocks;
  for (std::size_t v = 0; v < f.blocks().size(); ++v)
    blocks.push_back(f.block(v).transpose());
  return RepMorphism<K>(dualize(f.target()), dualize(f.source()), std::move(blocks),
                        false);
}

template <scalar_field K>
struct DirectSum {
  RepPtr<K> sum;
  std::vector<RepMorphism<K>> injections;
  std::vector<RepMorphism<K>> projections;
};

template <scalar_field K>
DirectSum<K> direct_sum(const AlgebraPtr<K>& alg, const std::vector<RepPtr<K>>& parts) {
  const Quiver& q = alg->quiver();
  const K one = alg->field_one();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  for (const auto& p : parts)
    for (std::size_t v = 0; v < q.vertex_count(); ++v) dims[v] += p->dim_at(v);
  std::vector<Matrix<K>> act;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    std::vector<Matrix<K>> blocks;
    for (const auto& p : parts) blocks.push_back(p->action(a));
    act.push_back(Matrix<K>::block_diag(one, blocks));
  }
  RepPtr<K> sum = make_rep(alg, dims, std::move(act));
  DirectSum<K> out{sum, {}, {}};
  std::vector<std::size_t> offset(q.vertex_count(), 0);
  for (const auto& p : parts) {
    std::vector<Matrix<K>> inj, proj;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      Matrix<K> in(one, dims[v], p->dim_at(v));
      Matrix<K> pr(one, p->dim_at(v), dims[v]);
      for (std::size_t i = 0; i < p->dim_at(v); ++i) {
        in.set(offset[v] + i, i, field_ops<K>::one(one));
        pr.set(i, offset[v] + i, field_ops<K>::one(one));
      }
      inj.push_back(std::move(in));
      proj.push_back(std::move(pr));
    }
    out.injections.emplace_back(p, sum, std::move(inj), false);
    out.projections.emplace_back(sum, p, std::move(proj), false);
    for (std::size_t v = 0; v < q.vertex_count(); ++v) offset[v] += p->dim_at(v);
  }
  return out;
}

namespace detail {

template <scalar_field K>
bool morphism_invertible(const RepMorphism<K>& f) {
  for (std::size_t v = 0; v < f.blocks().size(); ++v) {
    const Matrix<K>& b = f.block(v);
    if (b.rows() != b.cols()) return false;
    if (b.rows() == 0) continue;
    if (!inverse(b)) return false;
  }
  return true;
}

template <scalar_field K>
std::optional<RepMorphism<K>> invertible_combination(
    const RepPtr<K>& m, const RepPtr<K>& n, const std::vector<RepMorphism<K>>& homs,
    std::uint64_t seed) {
  for (const auto& h : homs)
    if (morphism_invertible(h)) return h;
  if (homs.empty()) return std::nullopt;
  const K one = m->one();
  const long long p = field_ops<K>::characteristic(one);
  // Over small prime fields with a small hom space, sweep everything.
  if (p > 0) {
    double combos = 1;
    for (std::size_t i = 0; i < homs.size(); ++i) combos *= static_cast<double>(p);
    if (combos <= 4096) {
      std::vector<long long> digits(homs.size(), 0);
      for (;;) {
        RepMorphism<K> f = zero_morphism(m, n);
        for (std::size_t i = 0; i < homs.size(); ++i)
          if (digits[i] != 0)
            f = morphism_add(f, morphism_scaled(homs[i],
                                                field_ops<K>::from_ratio(one, digits[i], 1)));
        if (morphism_invertible(f)) return f;
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
        if (i == digits.size()) return std::nullopt;
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> d(-4, 4);
  for (int t = 0; t < 96; ++t) {
    RepMorphism<K> f = zero_morphism(m, n);
    for (const auto& h : homs) {
      const long long c = d(rng);
      if (c != 0) f = morphism_add(f, morphism_scaled(h, field_ops<K>::from_ratio(one, c, 1)));
    }
    if (morphism_invertible(f)) return f;
  }
  return std::nullopt;
}

}  // namespace detail

/// Searches for an isomorphism: exhaustively over small prime-field hom
/// spaces, by seeded random invertible combinations otherwise.
template <scalar_field K>
std::optional<RepMorphism<K>> is_isomorphic(const RepPtr<K>& m, const RepPtr<K>& n,
                                            std::uint64_t seed = 1) {
  if (m->dims() != n->dims()) return std::nullopt;
  if (m->is_zero_module()) return zero_morphism(m, n);
  return detail::invertible_combination(m, n, hom_basis(m, n), seed);
}

/// One Krull-Schmidt summand with its inclusion/projection into the original
/// module and the endo-locality certificate (undecided means "probably
/// indecomposable": no splitting was found but locality resisted
/// certification).
template <scalar_field K>
struct Summand {
  RepPtr<K> piece;
  RepMorphism<K> incl;
  RepMorphism<K> proj;
  Tri endo_local;
};

namespace detail {

/// End(M) as structure constants over a hom basis.
template <scalar_field K>
FinDimAlgebra<K> endo_algebra(const RepPtr<K>& m, const std::vector<RepMorphism<K>>& ends) {
  const K one = m->one();
  const std::size_t d = ends.size();
  // Flatten morphisms to coordinate columns for change of basis.
  std::size_t entries = 0;
  for (std::size_t v = 0; v < m->dims().size(); ++v) entries += m->dim_at(v) * m->dim_at(v);
  Matrix<K> basis_mat(one, entries, d);
  auto flatten = [&](const RepMorphism<K>& f) {
    Matrix<K> col(one, entries, 1);
    std::size_t r = 0;
    for (std::size_t v = 0; v < m->dims().size(); ++v)
      for (std::size_t i = 0; i < m->dim_at(v); ++i)
        for (std::size_t j = 0; j < m->dim_at(v); ++j) col.set(r++, 0, f.block(v).at(i, j));
    return col;
  };
  for (std::size_t c = 0; c < d; ++c) {
    auto col = flatten(ends[c]);
    for (std::size_t r = 0; r < entries; ++r) basis_mat.set(r, c, col.at(r, 0));
  }
  auto coords_of = [&](const RepMorphism<K>& f) {
    auto sol = solve(basis_mat, flatten(f));
    if (!sol) throw internal_error("endomorphism outside its own basis");
    std::vector<K> v;
    for (std::size_t i = 0; i < d; ++i) v.push_back(sol->at(i, 0));
    return v;
  };
  std::vector<std::vector<std::vector<K>>> products(d, std::vector<std::vector<K>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      products[i][j] = coords_of(compose(ends[i], ends[j]));
  return FinDimAlgebra<K>(one, std::move(products), coords_of(identity_morphism(m)));
}

template <scalar_field K>
RepMorphism<K> from_endo_coords(const RepPtr<K>& m, const std::vector<RepMorphism<K>>& ends,
                                const std::vector<K>& coords) {
  RepMorphism<K> f = zero_morphism(m, m);
  for (std::size_t i = 0; i < ends.size(); ++i)
    if (!field_ops<K>::is_zero(coords[i]))
      f = morphism_add(f, morphism_scaled(ends[i], coords[i]));
  return f;
}

/// Splits M along a direct sum decomposition given by inner summand bases.
template <scalar_field K>
std::pair<RepMorphism<K>, RepMorphism<K>> split_projections(const RepMorphism<K>& incl_a,
                                                            const RepMorphism<K>& incl_b) {
  const RepPtr<K>& m = incl_a.target();
  const K one = m->one();
  std::vector<Matrix<K>> pa, pb;
  for (std::size_t v = 0; v < m->dims().size(); ++v) {
    Matrix<K> basis = Matrix<K>::hstack(incl_a.block(v), incl_b.block(v));
    auto inv = inverse(basis);
    if (!inv) throw internal_error("summand bases do not span");
    const std::size_t ka = incl_a.block(v).cols();
    Matrix<K> top_rows(one, ka, m->dim_at(v));
    Matrix<K> bot_rows(one, m->dim_at(v) - ka, m->dim_at(v));
    for (std::size_t j = 0; j < m->dim_at(v); ++j) {
      for (std::size_t i = 0; i < ka; ++i) top_rows.set(i, j, inv->at(i, j));
      for (std::size_t i = ka; i < m->dim_at(v); ++i)
        bot_rows.set(i - ka, j, inv->at(i, j));
    }
    pa.push_back(std::move(top_rows));
    pb.push_back(std::move(bot_rows));
  }
  return {RepMorphism<K>(m, incl_a.source(), std::move(pa)),
          RepMorphism<K>(m, incl_b.source(), std::move(pb))};
}

template <scalar_field K>
void decompose_rec(const RepPtr<K>& piece, const RepMorphism<K>& incl,
                   const RepMorphism<K>& proj, std::mt19937_64& rng,
                   std::vector<Summand<K>>& out) {
  if (piece->is_zero_module()) return;
  const auto ends = hom_basis(piece, piece);
  const K one = piece->one();
  if (ends.size() == 1) {
    out.push_back({piece, incl, proj, Tri::yes});  // End = k
    return;
  }

  auto try_split = [&](const RepMorphism<K>& phi) -> bool {
    // Fitting: split along ker/im of a high power of phi.
    RepMorphism<K> pw = phi;
    std::size_t e = 1;
    while (e < piece->total_dim()) {
      pw = compose(pw, pw);
      e *= 2;
    }
    auto parts = exact_parts(pw);
    if (parts.kernel->total_dim() == 0 || parts.kernel->total_dim() == piece->total_dim())
      return false;
    if (parts.kernel->total_dim() + parts.image->total_dim() != piece->total_dim())
      return false;  // not yet stabilized; should not happen at this power
    auto [pk, pi] = split_projections(parts.kernel_incl, parts.image_incl);
    decompose_rec(parts.kernel, compose(incl, parts.kernel_incl), compose(pk, proj), rng,
                  out);
    decompose_rec(parts.image, compose(incl, parts.image_incl), compose(pi, proj), rng,
                  out);
    return true;
  };

  std::uniform_int_distribution<long long> d(-3, 3);
  for (int t = 0; t < 24; ++t) {
    RepMorphism<K> phi = zero_morphism(piece, piece);
    for (const auto& h : ends) {
      const long long c = d(rng);
      if (c != 0)
        phi = morphism_add(phi, morphism_scaled(h, field_ops<K>::from_ratio(one, c, 1)));
    }
    if (try_split(phi)) return;
  }

  // No random split: certify locality of End or find an idempotent.
  FinDimAlgebra<K> endo = endo_algebra(piece, ends);
  auto loc = endo.locality(rng());
  if (loc.verdict == Tri::no) {
    RepMorphism<K> e = from_endo_coords(piece, ends, *loc.idempotent);
    auto parts = exact_parts(e);  // im(e) ⊕ ker(e)
    auto kernel = exact_parts(morphism_add(identity_morphism(piece), morphism_scaled(e, -field_ops<K>::one(one))));
    auto [pi, pk] = split_projections(parts.image_incl, kernel.image_incl);
    decompose_rec(parts.image, compose(incl, parts.image_incl), compose(pi, proj), rng, out);
    decompose_rec(kernel.image, compose(incl, kernel.image_incl), compose(pk, proj), rng,
                  out);
    return;
  }
  out.push_back({piece, incl, proj, loc.verdict});
}

}  // namespace detail

/// Krull-Schmidt decomposition by the randomized Fitting method, finished by
/// the End-locality certificate. Deterministic for a fixed seed.
template <scalar_field K>
std::vector<Summand<K>> decompose(const RepPtr<K>& m, std::uint64_t seed = 1) {
  std::vector<Summand<K>> out;
  std::mt19937_64 rng(seed);
  detail::decompose_rec(m, identity_morphism(m), identity_morphism(m), rng, out);
  return out;
}

/// Convenience wrapper: is the module certified indecomposable?
template <scalar_field K>
Tri certified_indecomposable(const RepPtr<K>& m, std::uint64_t seed = 1) {
  if (m->is_zero_module()) return Tri::no;
  auto parts = decompose(m, seed);
  if (parts.size() != 1) return Tri::no;
  return parts[0].endo_local;
}

}  // namespace tauq
