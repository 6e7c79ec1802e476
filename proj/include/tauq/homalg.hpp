#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "tauq/classify.hpp"
#include "tauq/rep.hpp"

namespace tauq {

/// An explicit finite direct sum of canonical projectives or injectives,
/// remembered with its vertex labels; the labels are what the Nakayama
/// functor acts on.
template <scalar_field K>
struct LabeledSum {
  std::vector<std::size_t> labels;
  RepPtr<K> rep;
  std::vector<RepMorphism<K>> injections;
  std::vector<RepMorphism<K>> projections;
};

// Summand order follows the given labels; callers that want the canonical
// ascending order (covers, envelopes) pass labels already sorted.
template <scalar_field K>
LabeledSum<K> make_labeled_projective(const AlgebraPtr<K>& alg,
                                      std::vector<std::size_t> labels) {
  std::vector<RepPtr<K>> parts;
  for (std::size_t x : labels) parts.push_back(make_projective(alg, x));
  DirectSum<K> sum = direct_sum(alg, parts);
  return {std::move(labels), sum.sum, std::move(sum.injections),
          std::move(sum.projections)};
}

template <scalar_field K>
LabeledSum<K> make_labeled_injective(const AlgebraPtr<K>& alg,
                                     std::vector<std::size_t> labels) {
  std::vector<RepPtr<K>> parts;
  for (std::size_t x : labels) parts.push_back(make_injective(alg, x));
  DirectSum<K> sum = direct_sum(alg, parts);
  return {std::move(labels), sum.sum, std::move(sum.injections),
          std::move(sum.projections)};
}

/// The morphism P_x -> M classified by a column vector in M(x): basis path
/// classes act on the chosen element.
template <scalar_field K>
RepMorphism<K> yoneda_morphism(const RepPtr<K>& proj_x, std::size_t x,
                               const RepPtr<K>& m, const Matrix<K>& mcol) {
  const AlgebraPtr<K>& alg = m->algebra();
  const Quiver& q = alg->quiver();
  std::vector<Matrix<K>> blocks;
  for (std::size_t z = 0; z < q.vertex_count(); ++z) {
    const auto& words = alg->pair_basis(x, z);
    Matrix<K> b(m->one(), m->dim_at(z), words.size());
    for (std::size_t c = 0; c < words.size(); ++c) {
      const Matrix<K> col = m->eval_path(alg->basis_word(words[c])) * mcol;
      for (std::size_t r = 0; r < m->dim_at(z); ++r) b.set(r, c, col.at(r, 0));
    }
    blocks.push_back(std::move(b));
  }
  return RepMorphism<K>(proj_x, m, std::move(blocks));
}

template <scalar_field K>
void require_semiperfect(const AlgebraPtr<K>& alg) {
  alg->require_decided();
  const std::size_t n = alg->quiver().vertex_count();
  for (std::size_t x = 0; x < n; ++x) {
    auto [verdict, witness] = detail::corner_locality(alg, x);
    if (verdict == Tri::no)
      throw input_error(
          "the algebra is not locally semiperfect (see classify: nontrivial idempotent "
          "at " +
          alg->quiver().vertex_id(x) + "); projective covers do not exist");
    if (verdict == Tri::undecided)
      throw undecided_error("local semiperfection undecided at vertex " +
                            alg->quiver().vertex_id(x) + "; see classify");
  }
}

template <scalar_field K>
struct Cover {
  LabeledSum<K> p0;
  RepMorphism<K> d0;  // p0.rep -> M, a superfluous epimorphism
};

/// Projective cover: one canonical projective per simple in top M, mapping
/// down a lifted basis of the top.
template <scalar_field K>
Cover<K> projective_cover(const RepPtr<K>& m) {
  const AlgebraPtr<K>& alg = m->algebra();
  require_semiperfect(alg);
  const Quiver& q = alg->quiver();
  QuotientObject<K> t = top(m);

  std::vector<std::size_t> labels;
  std::vector<std::pair<std::size_t, Matrix<K>>> lifts;  // (vertex, element of M(v))
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const std::size_t mult = t.quot->dim_at(v);
    if (mult == 0) continue;
    auto lift = solve(t.proj.block(v), Matrix<K>::identity(m->one(), mult));
    if (!lift) throw internal_error("top projection not surjective");
    for (std::size_t i = 0; i < mult; ++i) {
      labels.push_back(v);
      lifts.emplace_back(v, lift->col(i));
    }
  }
  LabeledSum<K> p0 = make_labeled_projective(alg, labels);
  RepMorphism<K> d0 = zero_morphism(p0.rep, m);
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    RepMorphism<K> yi = yoneda_morphism(p0.injections[i].source(), lifts[i].first, m,
                                        lifts[i].second);
    // Assemble through the canonical projection of the i-th summand.
    std::vector<Matrix<K>> blocks;
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
      blocks.push_back(yi.block(v) * p0.projections[i].block(v));
    d0 = morphism_add(d0, RepMorphism<K>(p0.rep, m, std::move(blocks), false));
  }
  // Covering the top makes d0 surjective (the radical is nilpotent here).
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (rank(d0.block(v)) != m->dim_at(v))
      throw internal_error("projective cover failed to surject");
  return {std::move(p0), std::move(d0)};
}

/// Two-term projective presentation P1 -> P0 -> M -> 0 with labels.
template <scalar_field K>
struct Presentation {
  LabeledSum<K> p1, p0;
  RepMorphism<K> d1;  // p1.rep -> p0.rep
  RepMorphism<K> d0;  // p0.rep -> M
  RepPtr<K> module;
  bool minimal;
  RepPtr<K> omega;            // ker d0
  RepMorphism<K> omega_incl;  // omega -> p0.rep
};

template <scalar_field K>
Presentation<K> presentation_from_parts(LabeledSum<K> p1, LabeledSum<K> p0,
                                        RepMorphism<K> d1, RepMorphism<K> d0,
                                        RepPtr<K> m, bool minimal) {
  // Exactness: d0 epi, d0 d1 = 0 and im d1 = ker d0 dimension-wise.
  if (!compose(d0, d1).is_zero()) throw input_error("presentation: d0 d1 != 0");
  auto parts = exact_parts(d0);
  for (std::size_t v = 0; v < m->dims().size(); ++v) {
    if (rank(d0.block(v)) != m->dim_at(v))
      throw input_error("presentation: d0 not surjective");
    if (rank(d1.block(v)) != parts.kernel->dim_at(v))
      throw input_error("presentation: im d1 != ker d0");
  }
  return {std::move(p1),    std::move(p0),          std::move(d1),
          std::move(d0),    std::move(m),           minimal,
          parts.kernel,     std::move(parts.kernel_incl)};
}

template <scalar_field K>
Presentation<K> minimal_presentation(const RepPtr<K>& m) {
  Cover<K> c0 = projective_cover(m);
  auto parts = exact_parts(c0.d0);
  Cover<K> c1 = projective_cover(parts.kernel);
  RepMorphism<K> d1 = compose(parts.kernel_incl, c1.d0);
  return {std::move(c1.p0), std::move(c0.p0),        std::move(d1),
          std::move(c0.d0), m,                       true,
          parts.kernel,     std::move(parts.kernel_incl)};
}

/// Injective side, computed by duality through the opposite algebra:
/// 0 -> M -> I0 -> I1 with socle-matching labels when minimal.
template <scalar_field K>
struct Copresentation {
  LabeledSum<K> i0, i1;
  RepMorphism<K> d0;  // M -> i0.rep
  RepMorphism<K> d1;  // i0.rep -> i1.rep
  RepPtr<K> module;
  bool minimal;
};

template <scalar_field K>
Copresentation<K> minimal_copresentation(const RepPtr<K>& m) {
  const AlgebraPtr<K>& alg = m->algebra();
  RepPtr<K> dm = dualize(m);
  Presentation<K> pres = minimal_presentation(dm);
  // Dualizing the canonical projectives of the opposite algebra gives the
  // canonical injectives on the nose, so labels transport unchanged.
  LabeledSum<K> i0 = make_labeled_injective(alg, pres.p0.labels);
  LabeledSum<K> i1 = make_labeled_injective(alg, pres.p1.labels);
  RepMorphism<K> d0_raw = dualize(pres.d0);  // DDM -> D(P0)
  RepMorphism<K> d1_raw = dualize(pres.d1);  // D(P0) -> D(P1)
  if (!(d0_raw.target()->dims() == i0.rep->dims()) ||
      !(d1_raw.target()->dims() == i1.rep->dims()))
    throw internal_error("dual of the opposite cover is not the canonical injective");
  RepMorphism<K> d0(m, i0.rep, d0_raw.blocks());
  RepMorphism<K> d1(i0.rep, i1.rep, d1_raw.blocks());
  return {std::move(i0), std::move(i1), std::move(d0), std::move(d1), m, true};
}

template <scalar_field K>
Copresentation<K> injective_envelope(const RepPtr<K>& m) {
  return minimal_copresentation(m);
}

/// Pads the first term of a presentation by an extra projective mapping to
/// zero. The result is still a presentation of the same module, no longer
/// minimal; it feeds the presentation-dependent translate.
template <scalar_field K>
Presentation<K> padded_presentation(const Presentation<K>& pres, std::size_t x) {
  const AlgebraPtr<K>& alg = pres.module->algebra();
  std::vector<std::size_t> labels1 = pres.p1.labels;
  labels1.push_back(x);
  LabeledSum<K> p1 = make_labeled_projective(alg, labels1);
  std::vector<Matrix<K>> blocks;
  for (std::size_t v = 0; v < pres.module->dims().size(); ++v) {
    Matrix<K> zero(pres.module->one(), pres.p0.rep->dim_at(v),
                   p1.rep->dim_at(v) - pres.p1.rep->dim_at(v));
    blocks.push_back(Matrix<K>::hstack(pres.d1.block(v), zero));
  }
  RepMorphism<K> d1(p1.rep, pres.p0.rep, std::move(blocks));
  return presentation_from_parts(std::move(p1), pres.p0, std::move(d1), pres.d0,
                                 pres.module, false);
}

namespace detail {

/// Flattens morphisms into coordinate columns over a fixed hom basis.
template <scalar_field K>
Matrix<K> flatten_morphism(const RepMorphism<K>& f) {
  const K one = f.source()->one();
  std::size_t entries = 0;
  for (std::size_t v = 0; v < f.blocks().size(); ++v)
    entries += f.block(v).rows() * f.block(v).cols();
  Matrix<K> col(one, entries, 1);
  std::size_t r = 0;
  for (std::size_t v = 0; v < f.blocks().size(); ++v)
    for (std::size_t i = 0; i < f.block(v).rows(); ++i)
      for (std::size_t j = 0; j < f.block(v).cols(); ++j)
        col.set(r++, 0, f.block(v).at(i, j));
  return col;
}

template <scalar_field K>
Matrix<K> hom_coordinate_matrix(const std::vector<RepMorphism<K>>& basis, const K& one) {
  if (basis.empty()) return Matrix<K>(one, 0, 0);
  Matrix<K> m(one, flatten_morphism(basis[0]).rows(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    auto col = flatten_morphism(basis[c]);
    for (std::size_t r = 0; r < m.rows(); ++r) m.set(r, c, col.at(r, 0));
  }
  return m;
}

template <scalar_field K>
Matrix<K> coords_in_basis(const Matrix<K>& basis_mat,
                          const std::vector<RepMorphism<K>>& fs, const K& one) {
  Matrix<K> rhs(one, basis_mat.rows(), fs.size());
  for (std::size_t c = 0; c < fs.size(); ++c) {
    auto col = flatten_morphism(fs[c]);
    for (std::size_t r = 0; r < rhs.rows(); ++r) rhs.set(r, c, col.at(r, 0));
  }
  auto sol = solve(basis_mat, rhs);
  if (!sol) throw internal_error("morphism outside the hom space");
  return *sol;
}

}  // namespace detail

/// A hom space modulo a distinguished subspace, with canonical coset
/// coordinates and representatives.
template <scalar_field K>
struct HomQuotient {
  std::size_t dim = 0;
  std::vector<RepMorphism<K>> space_basis;  // basis of the ambient hom space
  Matrix<K> coset_map;                      // quotient coords from ambient coords
  std::vector<RepMorphism<K>> representatives;

  Matrix<K> coset_coords(const Matrix<K>& ambient_coords) const {
    return coset_map * ambient_coords;
  }
};

namespace detail {

template <scalar_field K>
HomQuotient<K> quotient_by_subspace(std::vector<RepMorphism<K>> space,
                                    const std::vector<RepMorphism<K>>& subspace,
                                    const RepPtr<K>& src, const RepPtr<K>& tgt) {
  const K one = src->one();
  HomQuotient<K> out{0, std::move(space), Matrix<K>(one, 0, 0), {}};
  const std::size_t n = out.space_basis.size();
  if (n == 0) return out;
  Matrix<K> basis_mat = hom_coordinate_matrix(out.space_basis, one);
  Matrix<K> sub_coords = subspace.empty()
                             ? Matrix<K>(one, n, 0)
                             : coords_in_basis(basis_mat, subspace, one);
  out.coset_map = left_kernel(column_space_basis(sub_coords));
  out.dim = out.coset_map.rows();
  if (out.dim > 0) {
    auto reps = solve(out.coset_map, Matrix<K>::identity(one, out.dim));
    if (!reps) throw internal_error("coset section failed");
    for (std::size_t c = 0; c < out.dim; ++c) {
      RepMorphism<K> f = zero_morphism(src, tgt);
      for (std::size_t i = 0; i < n; ++i)
        if (!field_ops<K>::is_zero(reps->at(i, c)))
          f = morphism_add(f, morphism_scaled(out.space_basis[i], reps->at(i, c)));
      out.representatives.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace detail

/// Ext^1(M, N) modeled as Hom(Omega, N) / restrictions from Hom(P0, N) along
/// a projective presentation of M (minimal by default).
template <scalar_field K>
struct Ext1 {
  HomQuotient<K> classes;  // ambient space Hom(Omega, N)
  RepPtr<K> n;

  std::size_t dim() const { return classes.dim; }
};

template <scalar_field K>
Ext1<K> ext1(const Presentation<K>& pres, const RepPtr<K>& n) {
  auto omega_homs = hom_basis(pres.omega, n);
  std::vector<RepMorphism<K>> restricted;
  for (const auto& f : hom_basis(pres.p0.rep, n))
    restricted.push_back(compose(f, pres.omega_incl));
  Ext1<K> out{detail::quotient_by_subspace(std::move(omega_homs), restricted, pres.omega, n),
              n};
  return out;
}

template <scalar_field K>
Ext1<K> ext1(const RepPtr<K>& m, const RepPtr<K>& n) {
  return ext1(minimal_presentation(m), n);
}

/// Hom(M, N) modulo maps factoring through a projective: the projectively
/// trivial maps are exactly those factoring through the cover of N.
template <scalar_field K>
HomQuotient<K> stable_hom(const RepPtr<K>& m, const RepPtr<K>& n) {
  auto homs = hom_basis(m, n);
  Cover<K> cover = projective_cover(n);
  std::vector<RepMorphism<K>> trivial;
  for (const auto& g : hom_basis(m, cover.p0.rep))
    trivial.push_back(compose(cover.d0, g));
  return detail::quotient_by_subspace(std::move(homs), trivial, m, n);
}

/// Hom(M, N) modulo maps factoring through an injective: those factoring
/// through the injective envelope of M.
template <scalar_field K>
HomQuotient<K> costable_hom(const RepPtr<K>& m, const RepPtr<K>& n) {
  auto homs = hom_basis(m, n);
  Copresentation<K> env = minimal_copresentation(m);
  std::vector<RepMorphism<K>> trivial;
  for (const auto& h : hom_basis(env.i0.rep, n))
    trivial.push_back(compose(h, env.d0));
  return detail::quotient_by_subspace(std::move(homs), trivial, m, n);
}

}  // namespace tauq
