#pragma once

#include <vector>

#include "tauq/homalg.hpp"

namespace tauq {

/// Morphism between explicit sums of canonical projectives, encoded by its
/// coefficient matrix: entries[j][i] is an algebra element supported on paths
/// tgt_labels[j] -> src_labels[i], acting by right multiplication. This is
/// the carrier the Nakayama functor is defined on.
template <scalar_field K>
struct ProjMap {
  AlgebraPtr<K> alg;
  std::vector<std::size_t> src_labels;  // summands of the source sum
  std::vector<std::size_t> tgt_labels;  // summands of the target sum
  std::vector<std::vector<AlgebraElement<K>>> entries;  // [j][i]

  void validate() const {
    if (entries.size() != tgt_labels.size()) throw shape_error("ProjMap row count");
    for (std::size_t j = 0; j < tgt_labels.size(); ++j) {
      if (entries[j].size() != src_labels.size()) throw shape_error("ProjMap column count");
      for (std::size_t i = 0; i < src_labels.size(); ++i) {
        auto pair = alg->element_pair(entries[j][i]);
        if (!pair) continue;  // zero entries are fine
        if (pair->first != tgt_labels[j] || pair->second != src_labels[i])
          throw input_error("ProjMap entry endpoints do not match its labels");
      }
    }
  }
};

template <scalar_field K>
ProjMap<K> proj_map_identity(const AlgebraPtr<K>& alg, std::vector<std::size_t> labels) {
  ProjMap<K> pm{alg, labels, labels, {}};
  for (std::size_t j = 0; j < labels.size(); ++j) {
    std::vector<AlgebraElement<K>> row;
    for (std::size_t i = 0; i < labels.size(); ++i)
      row.push_back(i == j ? alg->idempotent(labels[i]) : alg->zero());
    pm.entries.push_back(std::move(row));
  }
  return pm;
}

/// Composite g . f of coefficient matrices: entries multiply in the algebra.
template <scalar_field K>
ProjMap<K> proj_map_compose(const ProjMap<K>& g, const ProjMap<K>& f) {
  if (f.tgt_labels != g.src_labels) throw shape_error("ProjMap composition mismatch");
  ProjMap<K> out{f.alg, f.src_labels, g.tgt_labels, {}};
  for (std::size_t k = 0; k < g.tgt_labels.size(); ++k) {
    std::vector<AlgebraElement<K>> row;
    for (std::size_t i = 0; i < f.src_labels.size(); ++i) {
      AlgebraElement<K> acc = f.alg->zero();
      for (std::size_t j = 0; j < f.tgt_labels.size(); ++j)
        acc = f.alg->add(acc, f.alg->multiply(f.entries[j][i], g.entries[k][j]));
      row.push_back(std::move(acc));
    }
    out.entries.push_back(std::move(row));
  }
  return out;
}

/// Realizes the coefficient matrix as an honest morphism between canonical
/// projective sums (right multiplication on path classes).
template <scalar_field K>
struct MaterializedProjMap {
  LabeledSum<K> source;
  LabeledSum<K> target;
  RepMorphism<K> morphism;
};

template <scalar_field K>
MaterializedProjMap<K> materialize(const ProjMap<K>& pm) {
  pm.validate();
  const AlgebraPtr<K>& alg = pm.alg;
  const Quiver& q = alg->quiver();
  LabeledSum<K> src = make_labeled_projective(alg, pm.src_labels);
  LabeledSum<K> tgt = make_labeled_projective(alg, pm.tgt_labels);
  std::vector<Matrix<K>> blocks;
  for (std::size_t z = 0; z < q.vertex_count(); ++z) {
    Matrix<K> b(alg->field_one(), tgt.rep->dim_at(z), src.rep->dim_at(z));
    for (std::size_t j = 0; j < pm.tgt_labels.size(); ++j)
      for (std::size_t i = 0; i < pm.src_labels.size(); ++i) {
        if (pm.entries[j][i].is_zero()) continue;
        Matrix<K> local = alg->right_mult_matrix(pm.entries[j][i], pm.tgt_labels[j],
                                                 pm.src_labels[i], z);
        b = b + tgt.injections[j].block(z) * local * src.projections[i].block(z);
      }
    blocks.push_back(std::move(b));
  }
  RepMorphism<K> f(src.rep, tgt.rep, std::move(blocks));
  return {std::move(src), std::move(tgt), std::move(f)};
}

/// The Nakayama functor on a coefficient matrix: P_x goes to I_x and each
/// entry acts as the transpose of left multiplication.
template <scalar_field K>
struct NuImage {
  LabeledSum<K> source;  // sum of I over src_labels
  LabeledSum<K> target;  // sum of I over tgt_labels
  RepMorphism<K> morphism;
};

template <scalar_field K>
NuImage<K> nu(const ProjMap<K>& pm) {
  pm.validate();
  const AlgebraPtr<K>& alg = pm.alg;
  const Quiver& q = alg->quiver();
  LabeledSum<K> src = make_labeled_injective(alg, pm.src_labels);
  LabeledSum<K> tgt = make_labeled_injective(alg, pm.tgt_labels);
  std::vector<Matrix<K>> blocks;
  for (std::size_t z = 0; z < q.vertex_count(); ++z) {
    Matrix<K> b(alg->field_one(), tgt.rep->dim_at(z), src.rep->dim_at(z));
    for (std::size_t j = 0; j < pm.tgt_labels.size(); ++j)
      for (std::size_t i = 0; i < pm.src_labels.size(); ++i) {
        if (pm.entries[j][i].is_zero()) continue;
        Matrix<K> local = alg->left_mult_matrix(pm.entries[j][i], pm.tgt_labels[j],
                                                pm.src_labels[i], z)
                              .transpose();
        b = b + tgt.injections[j].block(z) * local * src.projections[i].block(z);
      }
    blocks.push_back(std::move(b));
  }
  RepMorphism<K> f(src.rep, tgt.rep, std::move(blocks));
  return {std::move(src), std::move(tgt), std::move(f)};
}

/// Extracts the coefficient matrix of a morphism between labeled canonical
/// projective sums (the inverse of materialize).
template <scalar_field K>
ProjMap<K> proj_map_from_morphism(const LabeledSum<K>& src, const LabeledSum<K>& tgt,
                                  const RepMorphism<K>& d) {
  const AlgebraPtr<K>& alg = src.rep->algebra();
  ProjMap<K> pm{alg, src.labels, tgt.labels, {}};
  pm.entries.assign(tgt.labels.size(), {});
  for (std::size_t j = 0; j < tgt.labels.size(); ++j)
    pm.entries[j].assign(src.labels.size(), alg->zero());
  for (std::size_t i = 0; i < src.labels.size(); ++i) {
    const std::size_t x = src.labels[i];
    // The image of the trivial class of the i-th summand determines the
    // whole component by the Yoneda lemma.
    const std::size_t tpos = alg->pair_position(*alg->word_id(Path::trivial(x)));
    Matrix<K> unit(alg->field_one(), alg->pair_dim(x, x), 1);
    unit.set(tpos, 0, field_ops<K>::one(alg->field_one()));
    Matrix<K> big = d.block(x) * src.injections[i].block(x) * unit;
    for (std::size_t j = 0; j < tgt.labels.size(); ++j) {
      Matrix<K> local = tgt.projections[j].block(x) * big;
      pm.entries[j][i] = alg->element_from_pair_vector(tgt.labels[j], x, local);
    }
  }
  pm.validate();
  return pm;
}

/// Quasi-inverse of the Nakayama functor on explicitly labeled injective
/// sums: recovers the unique coefficient matrix whose nu-image is g.
template <scalar_field K>
ProjMap<K> nu_minus(const RepMorphism<K>& g, const std::vector<std::size_t>& src_labels,
                    const std::vector<std::size_t>& tgt_labels) {
  const AlgebraPtr<K>& alg = g.source()->algebra();
  const Quiver& q = alg->quiver();
  const K one = alg->field_one();
  LabeledSum<K> src = make_labeled_injective(alg, src_labels);
  LabeledSum<K> tgt = make_labeled_injective(alg, tgt_labels);
  if (!(src.rep->dims() == g.source()->dims()) ||
      !(tgt.rep->dims() == g.target()->dims()))
    throw input_error("nu_minus: morphism is not between the labeled injective sums");
  ProjMap<K> pm{alg, src.labels, tgt.labels, {}};
  pm.entries.assign(tgt.labels.size(), {});
  for (std::size_t j = 0; j < tgt.labels.size(); ++j) {
    pm.entries[j].assign(src.labels.size(), alg->zero());
    const std::size_t yj = tgt.labels[j];
    for (std::size_t i = 0; i < src.labels.size(); ++i) {
      const std::size_t xi = src.labels[i];
      const auto& words = alg->pair_basis(yj, xi);
      // Solve B_z = sum_w c_w transpose(left mult by w) over all vertices.
      std::size_t rows = 0;
      for (std::size_t z = 0; z < q.vertex_count(); ++z)
        rows += alg->pair_dim(z, xi) * alg->pair_dim(z, yj);
      Matrix<K> sys(one, rows, words.size());
      Matrix<K> rhs(one, rows, 1);
      std::size_t r0 = 0;
      for (std::size_t z = 0; z < q.vertex_count(); ++z) {
        Matrix<K> block = tgt.projections[j].block(z) * g.block(z) *
                          src.injections[i].block(z);
        for (std::size_t w = 0; w < words.size(); ++w) {
          Matrix<K> lm = alg->left_mult_matrix(alg->basis_element(words[w]), yj, xi, z)
                             .transpose();
          for (std::size_t r = 0; r < lm.rows(); ++r)
            for (std::size_t c = 0; c < lm.cols(); ++c)
              sys.set(r0 + r * lm.cols() + c, w, lm.at(r, c));
        }
        for (std::size_t r = 0; r < block.rows(); ++r)
          for (std::size_t c = 0; c < block.cols(); ++c)
            rhs.set(r0 + r * block.cols() + c, 0, block.at(r, c));
        r0 += block.rows() * block.cols();
      }
      auto sol = solve(sys, rhs);
      if (!sol) throw input_error("nu_minus: morphism is not in the image of nu");
      Matrix<K> coeffs(one, words.size(), 1);
      for (std::size_t w = 0; w < words.size(); ++w) coeffs.set(w, 0, sol->at(w, 0));
      pm.entries[j][i] = alg->element_from_pair_vector(yj, xi, coeffs);
    }
  }
  return pm;
}

/// tau via an explicit presentation: the kernel of nu(d1), together with the
/// injective copresentation it starts.
template <scalar_field K>
struct TauResult {
  RepPtr<K> module;          // tau M
  RepMorphism<K> inclusion;  // tau M -> nu P1
  NuImage<K> nu_d1;
};

template <scalar_field K>
TauResult<K> tau_with_presentation(const Presentation<K>& pres) {
  ProjMap<K> d1 = proj_map_from_morphism(pres.p1, pres.p0, pres.d1);
  NuImage<K> image = nu(d1);
  auto parts = exact_parts(image.morphism);
  return {parts.kernel, std::move(parts.kernel_incl), std::move(image)};
}

/// The AR-translate: computed summand-wise on a Krull-Schmidt decomposition,
/// from minimal presentations. Projective summands contribute zero.
template <scalar_field K>
RepPtr<K> tau(const RepPtr<K>& m, std::uint64_t seed = 1) {
  const AlgebraPtr<K>& alg = m->algebra();
  if (m->is_zero_module()) return zero_module(alg);
  std::vector<RepPtr<K>> pieces;
  for (const auto& s : decompose(m, seed))
    pieces.push_back(tau_with_presentation(minimal_presentation(s.piece)).module);
  if (pieces.size() == 1) return pieces[0];
  return direct_sum(alg, pieces).sum;
}

template <scalar_field K>
struct TauMinusResult {
  RepPtr<K> module;           // tau^- N
  RepMorphism<K> projection;  // P0 -> tau^- N (cokernel of nu^- d1)
};

template <scalar_field K>
TauMinusResult<K> tau_minus_with_copresentation(const Copresentation<K>& cop) {
  ProjMap<K> pm = nu_minus(cop.d1, cop.i0.labels, cop.i1.labels);
  MaterializedProjMap<K> mat = materialize(pm);
  auto parts = exact_parts(mat.morphism);
  return {parts.cokernel, std::move(parts.coker_proj)};
}

template <scalar_field K>
RepPtr<K> tau_minus(const RepPtr<K>& n, std::uint64_t seed = 1) {
  const AlgebraPtr<K>& alg = n->algebra();
  if (n->is_zero_module()) return zero_module(alg);
  std::vector<RepPtr<K>> pieces;
  for (const auto& s : decompose(n, seed))
    pieces.push_back(tau_minus_with_copresentation(minimal_copresentation(s.piece)).module);
  if (pieces.size() == 1) return pieces[0];
  return direct_sum(alg, pieces).sum;
}

/// Projectivity and injectivity tests through cover/envelope dimensions.
template <scalar_field K>
bool is_projective(const RepPtr<K>& m) {
  if (m->is_zero_module()) return true;
  Cover<K> c = projective_cover(m);
  return c.p0.rep->dims() == m->dims();
}

template <scalar_field K>
bool is_injective(const RepPtr<K>& m) {
  if (m->is_zero_module()) return true;
  Copresentation<K> c = minimal_copresentation(m);
  return c.i0.rep->dims() == m->dims();
}

}  // namespace tauq
