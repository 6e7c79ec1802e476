#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tauq/algebra.hpp"
#include "tauq/endoalg.hpp"

namespace tauq {

struct ClassifyCaps {
  std::size_t path_length_cap = 24;
  std::size_t multiserial_n_cap = 8;
};

template <scalar_field K>
struct ClassificationReport {
  AlgebraStatus status;
  ClassifyCaps caps;

  Tri locally_semiperfect = Tri::undecided;
  std::optional<AlgebraElement<K>> semiperfect_witness;  // nontrivial corner idempotent
  std::optional<std::size_t> semiperfect_witness_vertex;

  Tri locally_semiprimary = Tri::undecided;
  // Witness for infinitely many nonzero paths: a nonzero prefix and a cycle
  // whose repetitions stay nonzero (the class of cycle*prefix is a nonzero
  // scalar multiple of the class of the prefix).
  std::optional<std::pair<Path, Path>> semiprimary_witness;

  Tri locally_left_bounded = Tri::undecided;
  Tri locally_right_bounded = Tri::undecided;
  Tri left_eventually_multiserial = Tri::undecided;
  Tri right_eventually_multiserial = Tri::undecided;
  // One-way implications: eventually multiserial or bounded sides are
  // noetherian on that side.
  Tri locally_left_noetherian = Tri::undecided;
  Tri locally_right_noetherian = Tri::undecided;

  struct PerVertex {
    std::size_t vertex = 0;
    std::optional<std::size_t> dim_proj;  // dim of paths out of the vertex
    std::optional<std::size_t> dim_inj;   // dim of paths into the vertex
    Tri corner_local = Tri::undecided;
    Tri multiserial_left = Tri::undecided;
    Tri multiserial_right = Tri::undecided;
    std::optional<std::size_t> multiserial_left_n;
    std::optional<std::size_t> multiserial_right_n;
    Tri finitely_many_paths_from = Tri::undecided;
  };
  std::vector<PerVertex> vertices;
};

namespace detail {

template <scalar_field K>
using Coord = std::map<std::uint32_t, K>;

template <scalar_field K>
std::string scalar_free_key(const BoundQuiverAlgebra<K>& alg, const Coord<K>& c) {
  const K inv = field_ops<K>::inv(c.begin()->second);
  std::string key;
  for (const auto& [id, v] : c)
    key += std::to_string(id) + ":" + field_ops<K>::str(v * inv) + ";";
  (void)alg;
  return key;
}

/// Walks the tree of nonzero path extensions from one vertex over
/// deduplicated normal-form states (up to scalar, which extension respects).
template <scalar_field K>
class NonzeroPathWalker {
 public:
  NonzeroPathWalker(const BoundQuiverAlgebra<K>& alg, std::size_t depth_cap)
      : alg_(alg), cap_(depth_cap) {
    for (std::size_t a = 0; a < alg.quiver().arrow_count(); ++a)
      arrow_coords_.push_back(
          Coord<K>{{*alg.word_id(Path::of_arrows(alg.quiver(), {a})), one()}});
  }

  enum class Res { finite, infinite, undecided };

  struct Scan {
    Res res;
    std::optional<std::pair<Path, Path>> witness;  // (prefix, cycle) when infinite
    std::size_t count = 0;                         // nonzero paths when finite
  };

  Scan scan_from(std::size_t vertex) {
    memo_.clear();
    stack_keys_.clear();
    budget_ = 200000;
    Coord<K> start{{*alg_.word_id(Path::trivial(vertex)), one()}};
    Scan s;
    Path trivial = Path::trivial(vertex);
    auto [res, below] = dfs(start, trivial, 0, s);
    s.res = res;
    s.count = res == Res::finite ? below + 1 : 0;  // include the trivial path
    return s;
  }

  /// Nonzero paths of exactly length n from a vertex, with their class
  /// states; nullopt when the level outgrows the exploration budget.
  std::optional<std::vector<std::pair<Path, Coord<K>>>> nonzero_paths(std::size_t vertex,
                                                                      std::size_t n) {
    std::vector<std::pair<Path, Coord<K>>> level{
        {Path::trivial(vertex), Coord<K>{{*alg_.word_id(Path::trivial(vertex)), one()}}}};
    for (std::size_t step = 0; step < n; ++step) {
      std::vector<std::pair<Path, Coord<K>>> next;
      for (const auto& [p, st] : level)
        for (std::size_t a = 0; a < arrow_coords_.size(); ++a) {
          Coord<K> ext = alg_.mult_coords(arrow_coords_[a], st);
          if (ext.empty()) continue;
          std::vector<std::size_t> arrows = p.arrows();
          arrows.push_back(a);
          next.emplace_back(Path::of_arrows(alg_.quiver(), std::move(arrows)),
                            std::move(ext));
          if (next.size() > 50000) return std::nullopt;
        }
      level = std::move(next);
    }
    return level;
  }

  /// Is the extension tree of this state a chain (at most one nonzero child
  /// at every level)? Cycles in the state graph are infinite chains.
  Tri chain(const Coord<K>& state) {
    std::set<std::string> visited{scalar_free_key(alg_, state)};
    Coord<K> cur = state;
    for (std::size_t depth = 0;; ++depth) {
      std::optional<Coord<K>> next;
      for (const auto& ac : arrow_coords_) {
        Coord<K> ext = alg_.mult_coords(ac, cur);
        if (ext.empty()) continue;
        if (next) return Tri::no;
        next = std::move(ext);
      }
      if (!next) return Tri::yes;
      if (!visited.insert(scalar_free_key(alg_, *next)).second) return Tri::yes;
      if (depth >= cap_) return Tri::undecided;
      cur = std::move(*next);
    }
  }

 private:
  K one() const { return field_ops<K>::one(alg_.field_one()); }

  // Returns the verdict and, when finite, the number of nonzero nontrivial
  // paths strictly below this state. Only definite verdicts are memoized;
  // undecided depends on the remaining depth.
  std::pair<Res, std::size_t> dfs(const Coord<K>& state, const Path& path,
                                  std::size_t depth, Scan& scan) {
    if (budget_ == 0) return {Res::undecided, 0};
    --budget_;
    const std::string key = scalar_free_key(alg_, state);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    for (std::size_t i = 0; i < stack_keys_.size(); ++i)
      if (stack_keys_[i].first == key) {
        // Cycle in the state graph: pump it for an infinite nonzero family.
        if (!scan.witness) {
          const Path& prefix = stack_keys_[i].second;
          std::vector<std::size_t> cycle_arrows(path.arrows().begin() + prefix.length(),
                                                path.arrows().end());
          Path cycle = cycle_arrows.empty()
                           ? Path::trivial(path.target(alg_.quiver()))
                           : Path::of_arrows(alg_.quiver(), std::move(cycle_arrows));
          scan.witness = {prefix, cycle};
        }
        return {Res::infinite, 0};
      }
    if (depth >= cap_) return {Res::undecided, 0};
    stack_keys_.emplace_back(key, path);
    Res res = Res::finite;
    std::size_t below = 0;
    for (std::size_t a = 0; a < arrow_coords_.size() && res != Res::infinite; ++a) {
      Coord<K> ext = alg_.mult_coords(arrow_coords_[a], state);
      if (ext.empty()) continue;
      std::vector<std::size_t> arrows = path.arrows();
      arrows.push_back(a);
      Path child = Path::of_arrows(alg_.quiver(), std::move(arrows));
      auto [r, sub] = dfs(ext, child, depth + 1, scan);
      if (r == Res::infinite)
        res = Res::infinite;
      else if (r == Res::undecided && res == Res::finite)
        res = Res::undecided;
      else if (r == Res::finite)
        below += 1 + sub;
    }
    stack_keys_.pop_back();
    if (res != Res::undecided) memo_[key] = {res, below};
    return {res, below};
  }

  const BoundQuiverAlgebra<K>& alg_;
  std::size_t cap_;
  std::size_t budget_ = 200000;
  std::vector<Coord<K>> arrow_coords_;
  std::map<std::string, std::pair<Res, std::size_t>> memo_;
  std::vector<std::pair<std::string, Path>> stack_keys_;
};

/// Corner algebra e_x L e_x as structure constants over its basis ids.
template <scalar_field K>
FinDimAlgebra<K> corner_algebra(const BoundQuiverAlgebra<K>& alg, std::size_t x) {
  const auto& ids = alg.pair_basis(x, x);
  const std::size_t d = ids.size();
  const K one = field_ops<K>::one(alg.field_one());
  std::vector<std::vector<std::vector<K>>> products(d, std::vector<std::vector<K>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Coord<K> p = alg.mult_coords(Coord<K>{{ids[i], one}}, Coord<K>{{ids[j], one}});
      std::vector<K> v(d, field_ops<K>::zero(alg.field_one()));
      for (const auto& [id, c] : p) v[alg.pair_position(id)] = c;
      products[i][j] = std::move(v);
    }
  std::vector<K> identity(d, field_ops<K>::zero(alg.field_one()));
  identity[alg.pair_position(*alg.word_id(Path::trivial(x)))] = one;
  return FinDimAlgebra<K>(alg.field_one(), std::move(products), std::move(identity));
}

/// Is the positive part e_x J e_x a nilpotent ideal of the corner algebra?
/// Avoids the trace form entirely, so it works over any characteristic.
template <scalar_field K>
bool corner_positive_part_nilpotent(const BoundQuiverAlgebra<K>& alg, std::size_t x) {
  const auto& ids = alg.pair_basis(x, x);
  const K one = field_ops<K>::one(alg.field_one());
  const std::size_t d = ids.size();
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < d; ++i)
    if (!alg.basis_word(ids[i]).is_trivial()) positive.push_back(i);
  if (positive.empty()) return true;

  auto row_space = [&](const std::vector<std::vector<K>>& rows) {
    Matrix<K> m(alg.field_one(), rows.size(), d);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < d; ++c) m.set(r, c, rows[r][c]);
    Echelon<K> e = rref(m);
    std::vector<std::vector<K>> basis;
    for (std::size_t r = 0; r < e.rank(); ++r) {
      std::vector<K> v;
      for (std::size_t c = 0; c < d; ++c) v.push_back(e.reduced.at(r, c));
      basis.push_back(std::move(v));
    }
    return basis;
  };

  std::vector<std::vector<K>> span;
  for (std::size_t i : positive) {
    std::vector<K> v(d, field_ops<K>::zero(alg.field_one()));
    v[i] = one;
    span.push_back(std::move(v));
  }
  span = row_space(span);
  for (std::size_t iter = 0; iter <= d; ++iter) {
    if (span.empty()) return true;
    std::vector<std::vector<K>> next_rows;
    for (const auto& v : span)
      for (std::size_t p : positive) {
        Coord<K> vc;
        for (std::size_t i = 0; i < d; ++i)
          if (!field_ops<K>::is_zero(v[i])) vc.emplace(ids[i], v[i]);
        Coord<K> prod = alg.mult_coords(vc, Coord<K>{{ids[p], one}});
        std::vector<K> row(d, field_ops<K>::zero(alg.field_one()));
        for (const auto& [id, c] : prod) row[alg.pair_position(id)] = c;
        next_rows.push_back(std::move(row));
      }
    auto next = row_space(next_rows);
    if (next.size() == span.size()) return false;  // stabilized nonzero
    span = std::move(next);
  }
  return false;
}

template <scalar_field K>
std::pair<Tri, std::optional<AlgebraElement<K>>> corner_locality(
    const AlgebraPtr<K>& alg, std::size_t x) {
  const auto& ids = alg->pair_basis(x, x);
  if (ids.size() == 1) return {Tri::yes, std::nullopt};
  // When the positive part is a nilpotent ideal it equals the radical and
  // the corner is local outright; this needs no trace form, so it also
  // settles small prime fields.
  if (corner_positive_part_nilpotent(*alg, x)) return {Tri::yes, std::nullopt};
  FinDimAlgebra<K> corner = corner_algebra(*alg, x);
  auto loc = corner.locality(0x9e3779b9u + x);
  if (loc.verdict == Tri::no) {
    typename AlgebraElement<K>::Coord coords;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (!field_ops<K>::is_zero((*loc.idempotent)[i]))
        coords.emplace(ids[i], (*loc.idempotent)[i]);
    return {Tri::no, alg->element(std::move(coords))};
  }
  return {loc.verdict, std::nullopt};
}

}  // namespace detail

/// Structural classification of a bound quiver algebra: local semiperfection
/// with idempotent witnesses, local semiprimariness by the subpath-closure
/// walk, boundedness dimensions, and the eventually-multiserial search.
template <scalar_field K>
ClassificationReport<K> classify(const AlgebraPtr<K>& alg, ClassifyCaps caps = {}) {
  ClassificationReport<K> rep;
  rep.status = alg->status();
  rep.caps = caps;
  const std::size_t n = alg->quiver().vertex_count();
  rep.vertices.resize(n);
  for (std::size_t x = 0; x < n; ++x) rep.vertices[x].vertex = x;

  if (!alg->status().decided()) return rep;  // all nontrivial flags stay undecided

  // Boundedness is immediate from the saturated basis.
  rep.locally_left_bounded = Tri::yes;
  rep.locally_right_bounded = Tri::yes;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t out = 0, in = 0;
    for (std::size_t y = 0; y < n; ++y) {
      out += alg->pair_dim(x, y);
      in += alg->pair_dim(y, x);
    }
    rep.vertices[x].dim_proj = out;
    rep.vertices[x].dim_inj = in;
  }

  rep.locally_semiperfect = Tri::yes;
  for (std::size_t x = 0; x < n; ++x) {
    auto [verdict, witness] = detail::corner_locality(alg, x);
    rep.vertices[x].corner_local = verdict;
    if (verdict == Tri::no && rep.locally_semiperfect != Tri::no) {
      rep.locally_semiperfect = Tri::no;
      rep.semiperfect_witness = witness;
      rep.semiperfect_witness_vertex = x;
    } else if (verdict == Tri::undecided && rep.locally_semiperfect == Tri::yes) {
      rep.locally_semiperfect = Tri::undecided;
    }
  }

  detail::NonzeroPathWalker<K> walker(*alg, caps.path_length_cap);
  rep.locally_semiprimary = Tri::yes;
  for (std::size_t x = 0; x < n; ++x) {
    auto scan = walker.scan_from(x);
    using Res = typename detail::NonzeroPathWalker<K>::Res;
    rep.vertices[x].finitely_many_paths_from =
        scan.res == Res::finite ? Tri::yes
                                : (scan.res == Res::infinite ? Tri::no : Tri::undecided);
    if (scan.res == Res::infinite && rep.locally_semiprimary != Tri::no) {
      rep.locally_semiprimary = Tri::no;
      rep.semiprimary_witness = scan.witness;
    } else if (scan.res == Res::undecided && rep.locally_semiprimary == Tri::yes) {
      rep.locally_semiprimary = Tri::undecided;
    }
  }

  const AlgebraPtr<K> op = opposite_algebra(alg);
  detail::NonzeroPathWalker<K> op_walker(*op, caps.path_length_cap);
  auto multiserial_side = [&](detail::NonzeroPathWalker<K>& w, std::size_t x)
      -> std::pair<Tri, std::optional<std::size_t>> {
    for (std::size_t nn = 0; nn <= caps.multiserial_n_cap; ++nn) {
      auto level = w.nonzero_paths(x, nn);
      if (!level) return {Tri::undecided, std::nullopt};
      bool all_chains = true;
      bool undecided_here = false;
      for (const auto& [p, st] : *level) {
        (void)p;
        Tri t = w.chain(st);
        if (t == Tri::no) {
          all_chains = false;
          break;
        }
        if (t == Tri::undecided) undecided_here = true;
      }
      if (all_chains && !undecided_here) return {Tri::yes, nn};
    }
    return {Tri::undecided, std::nullopt};
  };

  rep.left_eventually_multiserial = Tri::yes;
  rep.right_eventually_multiserial = Tri::yes;
  for (std::size_t x = 0; x < n; ++x) {
    auto [lt, lnx] = multiserial_side(walker, x);
    auto [rt, rnx] = multiserial_side(op_walker, x);
    rep.vertices[x].multiserial_left = lt;
    rep.vertices[x].multiserial_left_n = lnx;
    rep.vertices[x].multiserial_right = rt;
    rep.vertices[x].multiserial_right_n = rnx;
    rep.left_eventually_multiserial = tri_and(rep.left_eventually_multiserial, lt);
    rep.right_eventually_multiserial = tri_and(rep.right_eventually_multiserial, rt);
  }

  auto implied = [](Tri a, Tri b) {
    return (a == Tri::yes || b == Tri::yes) ? Tri::yes : Tri::undecided;
  };
  rep.locally_left_noetherian =
      implied(rep.left_eventually_multiserial, rep.locally_left_bounded);
  rep.locally_right_noetherian =
      implied(rep.right_eventually_multiserial, rep.locally_right_bounded);
  return rep;
}

struct Conclusion {
  std::string id;
  std::string text;
  Tri status;  // yes, or undecided when a hypothesis is undecided
};

/// Almost-split-sequence existence statements that follow from the
/// classification flags. Conclusions whose hypotheses fail are omitted;
/// undecided hypotheses propagate.
template <scalar_field K>
std::vector<Conclusion> ass_theorem_conclusions(const ClassificationReport<K>& rep) {
  std::vector<Conclusion> out;
  auto add = [&](std::string id, std::string text, Tri status) {
    if (status == Tri::no) return;
    out.push_back({std::move(id), std::move(text), status});
  };
  const Tri sp = rep.locally_semiperfect;
  const Tri spr = rep.locally_semiprimary;
  const Tri lb = rep.locally_left_bounded;
  const Tri rb = rep.locally_right_bounded;
  add("mod_all",
      "the full module category has almost split sequences ending at every strongly "
      "indecomposable nonprojective finitely presented module and starting at every "
      "strongly indecomposable noninjective finitely copresented module",
      sp);
  add("fp_left", "finitely presented modules admit almost split sequences on the left",
      tri_and(spr, lb));
  add("fp_right", "finitely presented modules admit almost split sequences on the right",
      tri_and(spr, rb));
  add("fcp_right",
      "finitely copresented modules admit almost split sequences on the right",
      tri_and(spr, rb));
  add("fcp_left", "finitely copresented modules admit almost split sequences on the left",
      tri_and(spr, lb));
  add("fd_left", "finite-dimensional modules admit almost split sequences on the left",
      tri_and(spr, lb));
  add("fd_right", "finite-dimensional modules admit almost split sequences on the right",
      tri_and(spr, rb));
  return out;
}

}  // namespace tauq
