#pragma once

// The corpus algebras every suite computes against, with hand-counted basis
// dimensions recorded where the acceptance criteria need them.

#include <string>
#include <vector>

#include "tauq/algebra.hpp"
#include "tauq/rep.hpp"

namespace fixtures {

using tauq::AlgebraPtr;
using tauq::Path;
using tauq::PathCombo;
using tauq::Quiver;

/// Monomial written right to left ("b","a" means first a, then b).
inline Path mono(const Quiver& q, const std::vector<std::string>& ids) {
  std::vector<std::size_t> arrows;
  for (auto it = ids.rbegin(); it != ids.rend(); ++it)
    arrows.push_back(q.arrow_index(*it));
  return Path::of_arrows(q, std::move(arrows));
}

template <tauq::scalar_field K>
PathCombo<K> term(const Quiver& q, long long coef,
                  const std::vector<std::string>& ids, const K& one) {
  PathCombo<K> c;
  tauq::add_term(c, mono(q, ids), tauq::field_ops<K>::from_ratio(one, coef, 1));
  return c;
}

template <tauq::scalar_field K>
PathCombo<K> combo_sum(PathCombo<K> a, const PathCombo<K>& b) {
  for (const auto& [w, c] : b) tauq::add_term(a, w, c);
  return a;
}

// A2: 1 --a--> 2. Basis {e1, e2, a}.
template <tauq::scalar_field K>
AlgebraPtr<K> a2(const K& one) {
  Quiver q({"1", "2"}, {{"a", 0, 1}});
  return tauq::build_algebra<K>(q, std::vector<PathCombo<K>>{}, one);
}

// A3 with relation b*a: 1 --a--> 2 --b--> 3. Basis {e1,e2,e3,a,b}.
template <tauq::scalar_field K>
AlgebraPtr<K> a3_bound(const K& one) {
  Quiver q({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}});
  std::vector<PathCombo<K>> rels{term(q, 1, {"b", "a"}, one)};
  return tauq::build_algebra<K>(q, std::move(rels), one);
}

// Hereditary A3. Basis {e1,e2,e3,a,b,ba}.
template <tauq::scalar_field K>
AlgebraPtr<K> a3_hereditary(const K& one) {
  Quiver q({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}});
  return tauq::build_algebra<K>(q, std::vector<PathCombo<K>>{}, one);
}

// Kronecker: two arrows 1 -> 2. Basis {e1,e2,a,b}.
template <tauq::scalar_field K>
AlgebraPtr<K> kronecker(const K& one) {
  Quiver q({"1", "2"}, {{"a", 0, 1}, {"b", 0, 1}});
  return tauq::build_algebra<K>(q, std::vector<PathCombo<K>>{}, one);
}

// One loop with a^2 = a^3: locally bounded, not locally semiperfect.
// Basis {e, a, a^2}.
template <tauq::scalar_field K>
AlgebraPtr<K> loop_cube(const K& one) {
  Quiver q({"x"}, {{"a", 0, 0}});
  std::vector<PathCombo<K>> rels{combo_sum(term(q, 1, {"a", "a"}, one),
                                           term(q, -1, {"a", "a", "a"}, one))};
  return tauq::build_algebra<K>(q, std::move(rels), one);
}

// One loop truncated by a^2. Basis {e, a}; selfinjective Nakayama.
template <tauq::scalar_field K>
AlgebraPtr<K> loop_square(const K& one) {
  Quiver q({"x"}, {{"a", 0, 0}});
  std::vector<PathCombo<K>> rels{term(q, 1, {"a", "a"}, one)};
  return tauq::build_algebra<K>(q, std::move(rels), one);
}

// Seven-vertex window of the one-sided-infinite quiver
//   ... -> 6 -> 5 -> 4 --ga--> 3 --al--> 1 --mu--> 0 (loop del),
//                       3 --be--> 2 --nu--> 0
// with relations al*ga, be*ga, del^3. Boundary vertex: 6.
// Hand count of the normal-form basis: 7 trivial + 8 arrows + 7 (length 2)
// + 5 (length 3) + 2 (length 4) = 29.
template <tauq::scalar_field K>
AlgebraPtr<K> window_fp(const K& one) {
  Quiver q({"v0", "v1", "v2", "v3", "v4", "v5", "v6"},
           {{"del", 0, 0},
            {"mu", 1, 0},
            {"nu", 2, 0},
            {"al", 3, 1},
            {"be", 3, 2},
            {"ga", 4, 3},
            {"p5", 5, 4},
            {"p6", 6, 5}});
  std::vector<PathCombo<K>> rels{term(q, 1, {"al", "ga"}, one),
                                 term(q, 1, {"be", "ga"}, one),
                                 term(q, 1, {"del", "del", "del"}, one)};
  return tauq::build_algebra<K>(q, std::move(rels), one);
}
inline std::vector<std::string> window_fp_boundary() { return {"v6"}; }

// Eight-vertex window of the two-sided-infinite quiver
//   ... -> a3 -> a2 --al--> a1 --be--> c1 --de--> b1 --eta--> b2 -> b3 -> ...
//                      a1 --ga--> c2 --ze--> b1
// with relations be*al, ga*al, eta*de, eta*ze (all read right to left).
// Boundary vertices: a3 and b3. Hand count: 8 trivial + 8 arrows +
// 4 (length 2: al*al3, de*be, ze*ga, eta2*eta) = 20.
template <tauq::scalar_field K>
AlgebraPtr<K> window_fdim(const K& one) {
  Quiver q({"a3", "a2", "a1", "c1", "c2", "b1", "b2", "b3"},
           {{"al3", 0, 1},
            {"al", 1, 2},
            {"be", 2, 3},
            {"ga", 2, 4},
            {"de", 3, 5},
            {"ze", 4, 5},
            {"eta", 5, 6},
            {"eta2", 6, 7}});
  std::vector<PathCombo<K>> rels{
      term(q, 1, {"be", "al"}, one), term(q, 1, {"ga", "al"}, one),
      term(q, 1, {"eta", "de"}, one), term(q, 1, {"eta", "ze"}, one)};
  return tauq::build_algebra<K>(q, std::move(rels), one);
}
inline std::vector<std::string> window_fdim_boundary() { return {"a3", "b3"}; }

struct CorpusEntry {
  std::string name;
  AlgebraPtr<tauq::Rational> algebra;
  std::size_t expected_dim;
  bool expected_nilpotent;
};

inline std::vector<CorpusEntry> corpus() {
  const tauq::Rational one{1};
  return {
      {"a2", a2(one), 3, true},
      {"a3_bound", a3_bound(one), 5, true},
      {"a3_hereditary", a3_hereditary(one), 6, true},
      {"kronecker", kronecker(one), 4, true},
      {"loop_cube", loop_cube(one), 3, false},
      {"loop_square", loop_square(one), 2, true},
      {"window_fp", window_fp(one), 29, true},
      {"window_fdim", window_fdim(one), 20, true},
  };
}

/// The complete list of indecomposables where it is finite and known by
/// hand; a small known family for the Kronecker quiver; empty for the
/// windows (those are sampled instead).
inline std::vector<tauq::RepPtr<tauq::Rational>> known_indecomposables(
    const std::string& name, const AlgebraPtr<tauq::Rational>& alg) {
  using tauq::Matrix;
  using tauq::Rational;
  const Rational one{1};
  std::vector<tauq::RepPtr<Rational>> out;
  auto rep = [&](std::vector<std::size_t> dims, std::vector<Matrix<Rational>> act) {
    return tauq::make_rep(alg, std::move(dims), std::move(act));
  };
  if (name == "a2") {
    out = {tauq::make_simple(alg, 0), tauq::make_simple(alg, 1),
           tauq::make_projective(alg, 0)};
  } else if (name == "a3_bound") {
    out = {tauq::make_simple(alg, 0),     tauq::make_simple(alg, 1),
           tauq::make_simple(alg, 2),     tauq::make_projective(alg, 0),
           tauq::make_projective(alg, 1)};
  } else if (name == "a3_hereditary") {
    out = {tauq::make_simple(alg, 0),     tauq::make_simple(alg, 1),
           tauq::make_simple(alg, 2),     tauq::make_projective(alg, 0),
           tauq::make_projective(alg, 1), tauq::make_injective(alg, 1)};
  } else if (name == "kronecker") {
    out = {tauq::make_simple(alg, 0), tauq::make_simple(alg, 1),
           tauq::make_projective(alg, 0), tauq::make_injective(alg, 1)};
    // Three points of the regular family.
    out.push_back(rep({1, 1}, {Matrix<Rational>(one, {{1}}), Matrix<Rational>(one, {{0}})}));
    out.push_back(rep({1, 1}, {Matrix<Rational>(one, {{1}}), Matrix<Rational>(one, {{1}})}));
    out.push_back(rep({1, 1}, {Matrix<Rational>(one, {{0}}), Matrix<Rational>(one, {{1}})}));
  } else if (name == "loop_square") {
    out = {tauq::make_simple(alg, 0), tauq::make_projective(alg, 0)};
  } else if (name == "loop_cube") {
    out = {tauq::make_simple(alg, 0),
           rep({2}, {Matrix<Rational>(one, {{0, 1}, {0, 0}})}),
           rep({1}, {Matrix<Rational>(one, {{1}})})};
  }
  return out;
}

}  // namespace fixtures
