#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tauq/matrix.hpp"
#include "tauq/rewrite.hpp"
#include "tauq/tri.hpp"

namespace tauq {

template <scalar_field K>
class BoundQuiverAlgebra;

template <scalar_field K>
using AlgebraPtr = std::shared_ptr<const BoundQuiverAlgebra<K>>;

/// Generators of a relation ideal: k-linear combinations of parallel paths,
/// every monomial of length >= 2.
template <scalar_field K>
struct RelationIdeal {
  std::vector<PathCombo<K>> generators;
};

template <scalar_field K>
RelationIdeal<K> make_relation_ideal(const Quiver& q, std::vector<PathCombo<K>> gens) {
  std::vector<PathCombo<K>> kept;
  for (auto& g : gens) {
    if (g.empty()) continue;
    const Path& first = g.begin()->first;
    for (const auto& [w, c] : g) {
      if (w.length() < 2)
        throw input_error("relation monomial of length < 2: " + w.str(q));
      if (w.source() != first.source() || w.target(q) != first.target(q))
        throw input_error("relation mixes non-parallel paths: " + w.str(q) + " vs " +
                          first.str(q));
    }
    kept.push_back(std::move(g));
  }
  return {std::move(kept)};
}

struct AlgebraStatus {
  enum class Kind { nilpotent_verified, stabilized, undecided };
  Kind kind;
  std::size_t bound;  // nilpotency exponent, stabilization length, or the cap hit

  bool decided() const { return kind != Kind::undecided; }
  std::string str() const {
    switch (kind) {
      case Kind::nilpotent_verified: return "nilpotent-verified(" + std::to_string(bound) + ")";
      case Kind::stabilized: return "stabilized(" + std::to_string(bound) + ")";
      default: return "undecided(" + std::to_string(bound) + ")";
    }
  }
};

struct BuildCaps {
  std::size_t completion_degree = 24;
  std::size_t saturation_length = 64;
};

/// Element of a bound quiver algebra in normal form: finitely supported
/// coefficients on the basis of irreducible path classes.
template <scalar_field K>
class AlgebraElement {
 public:
  using Coord = std::map<std::uint32_t, K>;

  const Coord& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  const AlgebraPtr<K>& algebra() const { return alg_; }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.coords_ == b.coords_;
  }

 private:
  friend class BoundQuiverAlgebra<K>;
  AlgebraElement(AlgebraPtr<K> alg, Coord coords)
      : alg_(std::move(alg)), coords_(std::move(coords)) {}

  AlgebraPtr<K> alg_;
  Coord coords_;
};

/// A bound quiver algebra kQ/I with a completed rewrite system and a
/// saturated normal-form basis of nonzero path classes, grouped per
/// (source, target) pair. Immutable after construction; build via
/// build_algebra(), opposites via opposite_algebra().
template <scalar_field K>
class BoundQuiverAlgebra
    : public std::enable_shared_from_this<BoundQuiverAlgebra<K>> {
 public:
  using Coord = std::map<std::uint32_t, K>;

  BoundQuiverAlgebra(Quiver quiver, K one, RelationIdeal<K> relations, BuildCaps caps)
      : quiver_(std::move(quiver)),
        one_(std::move(one)),
        relations_(std::move(relations)),
        caps_(caps),
        rw_(quiver_, one_) {
    if (caps.completion_degree < 2 || caps.saturation_length < 2)
      throw input_error("build caps must be >= 2");
    const bool closed = rw_.complete(relations_.generators, caps.completion_degree);
    enumerate_basis(closed);
    index_basis();
    if (status_.decided()) self_check();
  }

  /// Transport constructor: the opposite algebra of `primal`, with basis the
  /// reversed words of the primal basis at identical indices and with all
  /// normal forms delegated. The per-pair basis order is inherited from the
  /// primal algebra (not re-sorted), so dualizing canonical projectives
  /// yields canonical injectives on the nose.
  struct transport_tag {};
  BoundQuiverAlgebra(transport_tag, AlgebraPtr<K> primal)
      : quiver_(primal->quiver_.opposite()),
        one_(primal->one_),
        caps_(primal->caps_),
        rw_(quiver_, one_),
        status_(primal->status_),
        primal_(primal) {
    for (const auto& g : primal->relations_.generators) {
      PathCombo<K> rev;
      for (const auto& [w, c] : g) add_term(rev, reversed(quiver_, w), c);
      relations_.generators.push_back(std::move(rev));
    }
    basis_words_.reserve(primal->basis_words_.size());
    for (const Path& w : primal->basis_words_)
      basis_words_.push_back(reversed(quiver_, w));
    index_basis_transported(*primal);
  }

  const Quiver& quiver() const { return quiver_; }
  const K& field_one() const { return one_; }
  const RelationIdeal<K>& relations() const { return relations_; }
  const AlgebraStatus& status() const { return status_; }
  const BuildCaps& caps() const { return caps_; }
  bool is_transported_opposite() const { return primal_ != nullptr; }
  const AlgebraPtr<K>& primal() const { return primal_; }

  std::size_t dim() const { return basis_words_.size(); }
  const Path& basis_word(std::uint32_t id) const { return basis_words_[id]; }

  const std::vector<std::uint32_t>& pair_basis(std::size_t src, std::size_t tgt) const {
    return pair_ids_[src * quiver_.vertex_count() + tgt];
  }
  std::size_t pair_dim(std::size_t src, std::size_t tgt) const {
    return pair_basis(src, tgt).size();
  }

  /// Position of a basis word inside its (source, target) pair list.
  std::size_t pair_position(std::uint32_t id) const { return pair_pos_[id]; }

  void require_decided() const {
    if (!status_.decided())
      throw undecided_error("algebra basis is undecided(" + std::to_string(status_.bound) +
                            "); rebuild with larger caps");
  }

  // ---- elements ----------------------------------------------------------

  AlgebraElement<K> element(Coord coords) const {
    return AlgebraElement<K>(this->shared_from_this(), std::move(coords));
  }
  AlgebraElement<K> zero() const { return element({}); }
  AlgebraElement<K> idempotent(std::size_t vertex) const {
    auto id = word_id(Path::trivial(vertex));
    if (!id) throw internal_error("missing trivial path class");
    return element({{*id, field_ops<K>::one(one_)}});
  }
  AlgebraElement<K> arrow_class(std::size_t arrow) const {
    auto id = word_id(Path::of_arrows(quiver_, {arrow}));
    if (!id) throw internal_error("missing arrow class");
    return element({{*id, field_ops<K>::one(one_)}});
  }
  AlgebraElement<K> basis_element(std::uint32_t id) const {
    return element({{id, field_ops<K>::one(one_)}});
  }

  std::optional<std::uint32_t> word_id(const Path& w) const {
    auto it = word_index_.find(w);
    if (it == word_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Normal form of a formal k-linear path combination.
  AlgebraElement<K> normalize(const PathCombo<K>& combo) const {
    return element(normalize_coords(combo));
  }

  AlgebraElement<K> add(const AlgebraElement<K>& a, const AlgebraElement<K>& b) const {
    Coord out = a.coords();
    for (const auto& [id, c] : b.coords()) coord_add(out, id, c);
    return element(std::move(out));
  }
  AlgebraElement<K> scale(const AlgebraElement<K>& a, const K& s) const {
    Coord out;
    if (!field_ops<K>::is_zero(s))
      for (const auto& [id, c] : a.coords()) out.emplace(id, c * s);
    return element(std::move(out));
  }

  /// Product in the algebra: multiply(a, b) applies b first, then a, matching
  /// the right-to-left composition of paths.
  AlgebraElement<K> multiply(const AlgebraElement<K>& a, const AlgebraElement<K>& b) const {
    return element(mult_coords(a.coords(), b.coords()));
  }

  Tri is_nonzero_path(const Path& p) const {
    if (primal_) return primal_->is_nonzero_path(reversed(primal_->quiver_, p));
    PathCombo<K> c;
    add_term(c, p, field_ops<K>::one(one_));
    const PathCombo<K> r = rw_.reduce(c);
    if (r.empty()) return Tri::no;
    if (status_.decided()) return Tri::yes;
    return Tri::undecided;
  }

  /// (source, target) of a parallel element; nullopt for zero or mixed.
  std::optional<std::pair<std::size_t, std::size_t>> element_pair(
      const AlgebraElement<K>& e) const {
    std::optional<std::pair<std::size_t, std::size_t>> out;
    for (const auto& [id, c] : e.coords()) {
      const Path& w = basis_words_[id];
      std::pair<std::size_t, std::size_t> p{w.source(), w.target(quiver_)};
      if (!out)
        out = p;
      else if (*out != p)
        return std::nullopt;
    }
    return out;
  }

  std::string element_str(const AlgebraElement<K>& e) const {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [id, c] : e.coords()) {
      const std::string cs = field_ops<K>::str(c);
      if (!first) os << " + ";
      if (cs != "1") os << cs << "*";
      os << basis_words_[id].str(quiver_);
      first = false;
    }
    return os.str();
  }

  // ---- action matrices ---------------------------------------------------

  /// Matrix of w -> u*w on path classes from `src`: pair(src, a) -> pair(src, b)
  /// for u supported in paths a -> b.
  Matrix<K> left_mult_matrix(const AlgebraElement<K>& u, std::size_t a, std::size_t b,
                             std::size_t src) const {
    const auto& dom = pair_basis(src, a);
    const auto& cod = pair_basis(src, b);
    Matrix<K> m(one_, cod.size(), dom.size());
    for (std::size_t c = 0; c < dom.size(); ++c)
      fill_column(m, c, mult_coords(u.coords(), unit_coord(dom[c])));
    return m;
  }

  /// Matrix of w -> w*u on path classes into `tgt`: pair(b, tgt) -> pair(a, tgt)
  /// for u supported in paths a -> b.
  Matrix<K> right_mult_matrix(const AlgebraElement<K>& u, std::size_t a, std::size_t b,
                              std::size_t tgt) const {
    const auto& dom = pair_basis(b, tgt);
    const auto& cod = pair_basis(a, tgt);
    Matrix<K> m(one_, cod.size(), dom.size());
    for (std::size_t c = 0; c < dom.size(); ++c)
      fill_column(m, c, mult_coords(unit_coord(dom[c]), u.coords()));
    return m;
  }

  /// Decode a coefficient vector over pair_basis(a, b) into an element.
  AlgebraElement<K> element_from_pair_vector(std::size_t a, std::size_t b,
                                             const Matrix<K>& column) const {
    const auto& ids = pair_basis(a, b);
    if (column.rows() != ids.size() || column.cols() != 1)
      throw shape_error("pair vector shape mismatch");
    Coord out;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (!field_ops<K>::is_zero(column.at(i, 0))) out.emplace(ids[i], column.at(i, 0));
    return element(std::move(out));
  }

  static Path reversed(const Quiver& target_quiver, const Path& w) {
    if (w.is_trivial()) return Path::trivial(w.source());
    std::vector<std::size_t> arrows(w.arrows().rbegin(), w.arrows().rend());
    return Path::of_arrows(target_quiver, std::move(arrows));
  }

  // Internal coordinate arithmetic, usable during construction.
  Coord normalize_coords(const PathCombo<K>& combo) const {
    if (primal_) {
      PathCombo<K> rev;
      for (const auto& [w, c] : combo) add_term(rev, reversed(primal_->quiver_, w), c);
      return primal_->normalize_coords(rev);
    }
    const PathCombo<K> r = rw_.reduce(combo);
    Coord out;
    for (const auto& [w, c] : r) {
      auto id = word_id(w);
      if (!id) {
        if (!status_.decided())
          throw undecided_error("normal form leaves the certified basis: " + w.str(quiver_));
        throw internal_error("irreducible word missing from basis: " + w.str(quiver_));
      }
      out.emplace(*id, c);
    }
    return out;
  }

  Coord mult_coords(const Coord& a, const Coord& b) const {
    if (primal_) return primal_->mult_coords(b, a);
    PathCombo<K> raw;
    for (const auto& [ib, cb] : b) {
      const Path& wb = basis_words_[ib];
      for (const auto& [ia, ca] : a) {
        const Path& wa = basis_words_[ia];
        auto w = compose(quiver_, wa, wb);  // first b, then a
        if (!w) continue;
        add_term(raw, *w, ca * cb);
      }
    }
    return normalize_coords(raw);
  }

 private:
  static void coord_add(Coord& c, std::uint32_t id, const K& v) {
    auto [it, inserted] = c.emplace(id, v);
    if (!inserted) {
      it->second = it->second + v;
      if (field_ops<K>::is_zero(it->second)) c.erase(it);
    }
  }

  Coord unit_coord(std::uint32_t id) const { return {{id, field_ops<K>::one(one_)}}; }

  // pair_pos_ gives the row index inside the codomain pair list; products
  // stay within one (source, target) pair because the algebra is graded.
  void fill_column(Matrix<K>& m, std::size_t col, const Coord& value) const {
    for (const auto& [id, c] : value) m.set(pair_pos_[id], col, c);
  }

  void enumerate_basis(bool completion_closed) {
    std::vector<Path> level;
    for (std::size_t v = 0; v < quiver_.vertex_count(); ++v) {
      level.push_back(Path::trivial(v));
      basis_words_.push_back(level.back());
    }
    std::optional<std::size_t> empty_level;
    for (std::size_t len = 1; len <= caps_.saturation_length; ++len) {
      std::vector<Path> next;
      for (const Path& w : level) {
        const std::size_t end = w.target(quiver_);
        for (std::size_t a = 0; a < quiver_.arrow_count(); ++a) {
          if (quiver_.arrow(a).src != end) continue;
          std::vector<std::size_t> arrows = w.arrows();
          arrows.push_back(a);
          Path ext = Path::of_arrows(quiver_, std::move(arrows));
          if (rw_.suffix_irreducible(ext)) next.push_back(std::move(ext));
        }
      }
      if (next.empty()) {
        empty_level = len;
        break;
      }
      for (const Path& w : next) basis_words_.push_back(w);
      level = std::move(next);
    }
    if (!completion_closed || !empty_level) {
      status_ = {AlgebraStatus::Kind::undecided,
                 completion_closed ? caps_.saturation_length : caps_.completion_degree};
      return;
    }
    const std::size_t bound = *empty_level;
    status_ = {nilpotency_holds(bound) ? AlgebraStatus::Kind::nilpotent_verified
                                       : AlgebraStatus::Kind::stabilized,
               bound};
  }

  /// J^L = 0 iff no path of length L is nonzero; walked on deduplicated
  /// normal-form states, which is sound because extension is linear in the
  /// state.
  bool nilpotency_holds(std::size_t length) {
    std::vector<PathCombo<K>> states;
    for (std::size_t v = 0; v < quiver_.vertex_count(); ++v) {
      PathCombo<K> s;
      add_term(s, Path::trivial(v), field_ops<K>::one(one_));
      states.push_back(std::move(s));
    }
    for (std::size_t step = 0; step < length; ++step) {
      std::vector<PathCombo<K>> next;
      std::set<std::string> seen;
      for (const PathCombo<K>& s : states) {
        for (std::size_t a = 0; a < quiver_.arrow_count(); ++a) {
          PathCombo<K> raw;
          for (const auto& [w, c] : s) {
            auto ext = compose(quiver_, Path::of_arrows(quiver_, {a}), w);
            if (ext) add_term(raw, *ext, c);
          }
          if (raw.empty()) continue;
          PathCombo<K> red = rw_.reduce(raw);
          if (red.empty()) continue;
          std::string key = combo_key(red);
          if (seen.insert(std::move(key)).second) next.push_back(std::move(red));
          if (next.size() > 20000) return false;  // state budget; stay conservative
        }
      }
      if (next.empty()) return true;
      states = std::move(next);
    }
    return false;
  }

  std::string combo_key(const PathCombo<K>& c) const {
    std::ostringstream os;
    for (const auto& [w, coef] : c) {
      os << w.source();
      for (std::size_t a : w.arrows()) os << "." << a;
      os << "=" << field_ops<K>::str(coef) << ";";
    }
    return os.str();
  }

  void index_basis() {
    const std::size_t n = quiver_.vertex_count();
    pair_ids_.assign(n * n, {});
    pair_pos_.assign(basis_words_.size(), 0);
    for (std::uint32_t id = 0; id < basis_words_.size(); ++id) {
      const Path& w = basis_words_[id];
      word_index_.emplace(w, id);
      auto& list = pair_ids_[w.source() * n + w.target(quiver_)];
      pair_pos_[id] = list.size();
      list.push_back(id);
    }
  }

  void index_basis_transported(const BoundQuiverAlgebra& primal) {
    const std::size_t n = quiver_.vertex_count();
    pair_ids_.assign(n * n, {});
    pair_pos_.assign(basis_words_.size(), 0);
    for (std::uint32_t id = 0; id < basis_words_.size(); ++id)
      word_index_.emplace(basis_words_[id], id);
    // Inherit the primal per-pair order under (src, tgt) reversal.
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        auto& list = pair_ids_[t * n + s];
        for (std::uint32_t id : primal.pair_basis(s, t)) {
          pair_pos_[id] = list.size();
          list.push_back(id);
        }
      }
  }

  void self_check() const {
    // Idempotent laws on the basis.
    for (std::size_t x = 0; x < quiver_.vertex_count(); ++x) {
      const Coord ex = {{*word_id(Path::trivial(x)), field_ops<K>::one(one_)}};
      for (std::uint32_t id = 0; id < basis_words_.size(); ++id) {
        const Path& w = basis_words_[id];
        const Coord c = unit_coord(id);
        const Coord left = mult_coords(ex, c);
        const Coord right = mult_coords(c, ex);
        const bool tgt_match = w.target(quiver_) == x;
        const bool src_match = w.source() == x;
        if ((tgt_match && left != c) || (!tgt_match && !left.empty()) ||
            (src_match && right != c) || (!src_match && !right.empty()))
          throw internal_error("idempotent law failed on basis");
      }
    }
    if (dim() > 48) return;
    for (std::uint32_t i = 0; i < dim(); ++i)
      for (std::uint32_t j = 0; j < dim(); ++j)
        for (std::uint32_t k = 0; k < dim(); ++k) {
          const Coord ab = mult_coords(unit_coord(i), unit_coord(j));
          const Coord bc = mult_coords(unit_coord(j), unit_coord(k));
          if (mult_coords(ab, unit_coord(k)) != mult_coords(unit_coord(i), bc))
            throw internal_error("associativity failed on basis triple");
        }
  }

  Quiver quiver_;
  K one_;
  RelationIdeal<K> relations_;
  BuildCaps caps_;
  RewriteSystem<K> rw_;
  AlgebraStatus status_{AlgebraStatus::Kind::undecided, 0};
  AlgebraPtr<K> primal_;  // set only on transported opposites

  std::vector<Path> basis_words_;
  std::map<Path, std::uint32_t, PathLess> word_index_;
  std::vector<std::vector<std::uint32_t>> pair_ids_;
  std::vector<std::size_t> pair_pos_;

  mutable std::weak_ptr<const BoundQuiverAlgebra<K>> opposite_cache_;

  template <scalar_field K2>
  friend AlgebraPtr<K2> opposite_algebra(const AlgebraPtr<K2>& a);
};

template <scalar_field K>
AlgebraPtr<K> build_algebra(Quiver q, RelationIdeal<K> rels, const K& one,
                            BuildCaps caps = {}) {
  return std::make_shared<const BoundQuiverAlgebra<K>>(std::move(q), one, std::move(rels),
                                                       caps);
}

template <scalar_field K>
AlgebraPtr<K> build_algebra(Quiver q, std::vector<PathCombo<K>> gens, const K& one,
                            BuildCaps caps = {}) {
  RelationIdeal<K> rels = make_relation_ideal(q, std::move(gens));
  return build_algebra(std::move(q), std::move(rels), one, caps);
}

/// The opposite algebra. For a transported opposite this returns the primal
/// algebra itself, so taking opposites twice is pointer-stable.
template <scalar_field K>
AlgebraPtr<K> opposite_algebra(const AlgebraPtr<K>& a) {
  if (a->primal()) return a->primal();
  if (auto cached = a->opposite_cache_.lock()) return cached;
  auto op = std::make_shared<const BoundQuiverAlgebra<K>>(
      typename BoundQuiverAlgebra<K>::transport_tag{}, a);
  a->opposite_cache_ = op;
  return op;
}

}  // namespace tauq
