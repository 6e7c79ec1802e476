#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "tauq/classify.hpp"

using namespace tauq;
using fixtures::mono;

namespace {
const Rational one{1};
}

TEST_CASE("A2 basis and status") {
  auto alg = fixtures::a2(one);
  REQUIRE(alg->dim() == 3);
  REQUIRE(alg->status().kind == AlgebraStatus::Kind::nilpotent_verified);
  REQUIRE(alg->status().bound == 2);
  REQUIRE(alg->pair_dim(0, 1) == 1);
  REQUIRE(alg->pair_dim(1, 0) == 0);
}

TEST_CASE("loop with a^2 = a^3 stabilizes without nilpotency") {
  auto alg = fixtures::loop_cube(one);
  REQUIRE(alg->dim() == 3);
  REQUIRE(alg->status().kind == AlgebraStatus::Kind::stabilized);
}

TEST_CASE("bound A3 basis") {
  auto alg = fixtures::a3_bound(one);
  REQUIRE(alg->dim() == 5);
  REQUIRE(alg->status().kind == AlgebraStatus::Kind::nilpotent_verified);
  REQUIRE(alg->status().bound == 2);
}

TEST_CASE("normalize examples") {
  auto a3 = fixtures::a3_bound(one);
  PathCombo<Rational> ba;
  add_term(ba, mono(a3->quiver(), {"b", "a"}), one);
  REQUIRE(a3->normalize(ba).is_zero());

  auto lc = fixtures::loop_cube(one);
  PathCombo<Rational> a3rd;
  add_term(a3rd, mono(lc->quiver(), {"a", "a", "a"}), one);
  auto nf = lc->normalize(a3rd);
  REQUIRE(nf == lc->normalize([&] {
    PathCombo<Rational> sq;
    add_term(sq, mono(lc->quiver(), {"a", "a"}), one);
    return sq;
  }()));
  REQUIRE(lc->element_str(nf) == "a*a");

  PathCombo<Rational> triv;
  add_term(triv, Path::trivial(0), one);
  add_term(triv, mono(lc->quiver(), {"a"}), Rational(0));
  REQUIRE(lc->normalize(triv) == lc->idempotent(0));
}

TEST_CASE("multiplication laws") {
  auto a2 = fixtures::a2(one);
  auto a = a2->arrow_class(0);
  REQUIRE(a2->multiply(a2->idempotent(1), a) == a);
  REQUIRE(a2->multiply(a, a2->idempotent(0)) == a);
  REQUIRE(a2->multiply(a, a2->idempotent(1)).is_zero());

  auto lc = fixtures::loop_cube(one);
  auto al = lc->arrow_class(0);
  auto sq = lc->multiply(al, al);
  REQUIRE(lc->multiply(al, sq) == sq);

  auto a3 = fixtures::a3_bound(one);
  REQUIRE(a3->multiply(a3->arrow_class(1), a3->arrow_class(0)).is_zero());
}

TEST_CASE("is_nonzero_path") {
  auto a2 = fixtures::a2(one);
  REQUIRE(a2->is_nonzero_path(mono(a2->quiver(), {"a"})) == Tri::yes);
  auto a3 = fixtures::a3_bound(one);
  REQUIRE(a3->is_nonzero_path(mono(a3->quiver(), {"b", "a"})) == Tri::no);
  auto lc = fixtures::loop_cube(one);
  REQUIRE(lc->is_nonzero_path(mono(lc->quiver(), {"a", "a", "a", "a", "a"})) == Tri::yes);
}

TEST_CASE("free loop algebra is undecided and refuses totality") {
  Quiver q({"x"}, {{"a", 0, 0}});
  auto alg = build_algebra<Rational>(q, std::vector<PathCombo<Rational>>{}, one,
                                     {8, 8});
  REQUIRE(alg->status().kind == AlgebraStatus::Kind::undecided);
  REQUIRE_THROWS_AS(alg->require_decided(), undecided_error);
  // Long paths fall outside the certified basis.
  std::vector<std::size_t> arrows(9, 0);
  PathCombo<Rational> c;
  add_term(c, Path::of_arrows(q, arrows), one);
  REQUIRE_THROWS_AS(alg->normalize(c), undecided_error);
  REQUIRE(alg->is_nonzero_path(Path::of_arrows(q, arrows)) == Tri::undecided);
}

TEST_CASE("corpus dimensions") {
  for (const auto& entry : fixtures::corpus()) {
    INFO(entry.name);
    REQUIRE(entry.algebra->dim() == entry.expected_dim);
    REQUIRE(entry.algebra->status().decided());
    REQUIRE((entry.algebra->status().kind == AlgebraStatus::Kind::nilpotent_verified) ==
            entry.expected_nilpotent);
  }
}

TEST_CASE("pair dimension equals surviving path count") {
  for (const auto& entry : fixtures::corpus()) {
    INFO(entry.name);
    const auto& alg = entry.algebra;
    const Quiver& q = alg->quiver();
    const std::size_t cap = alg->status().bound;
    for (std::size_t x = 0; x < q.vertex_count(); ++x)
      for (std::size_t y = 0; y < q.vertex_count(); ++y) {
        std::set<std::string> forms;
        for (const Path& p : paths_between(q, x, y, cap)) {
          PathCombo<Rational> c;
          add_term(c, p, one);
          auto nf = alg->normalize(c);
          if (!nf.is_zero()) forms.insert(alg->element_str(nf));
        }
        REQUIRE(forms.size() == alg->pair_dim(x, y));
      }
  }
}

TEST_CASE("confluence spot check on random paths") {
  auto alg = fixtures::window_fp(one);
  const Quiver& q = alg->quiver();
  std::mt19937_64 rng(23);
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    for (const Path& p : paths_between(q, x, 0, 5)) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        auto ext = compose(q, Path::of_arrows(q, {a}), p);
        if (!ext) continue;
        PathCombo<Rational> whole, part;
        add_term(whole, *ext, one);
        add_term(part, p, one);
        REQUIRE(alg->normalize(whole) ==
                alg->multiply(alg->arrow_class(a), alg->normalize(part)));
      }
    }
  (void)rng;
}

TEST_CASE("nilpotent bound kills long products") {
  auto alg = fixtures::window_fp(one);
  REQUIRE(alg->status().kind == AlgebraStatus::Kind::nilpotent_verified);
  const std::size_t n = alg->status().bound;
  // Any product of n positive-length basis classes vanishes.
  std::mt19937_64 rng(5);
  std::vector<std::uint32_t> positive;
  for (std::uint32_t id = 0; id < alg->dim(); ++id)
    if (!alg->basis_word(id).is_trivial()) positive.push_back(id);
  std::uniform_int_distribution<std::size_t> pick(0, positive.size() - 1);
  for (int t = 0; t < 200; ++t) {
    auto prod = alg->basis_element(positive[pick(rng)]);
    for (std::size_t i = 1; i + 1 <= n; ++i)
      prod = alg->multiply(alg->basis_element(positive[pick(rng)]), prod);
    REQUIRE(prod.is_zero());
  }
}

TEST_CASE("subpath closure of nonzero paths") {
  auto alg = fixtures::window_fp(one);
  const Quiver& q = alg->quiver();
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    for (std::size_t y = 0; y < q.vertex_count(); ++y)
      for (const Path& p : paths_between(q, x, y, 4)) {
        if (alg->is_nonzero_path(p) != Tri::yes) continue;
        for (std::size_t pos = 0; pos < p.length(); ++pos)
          for (std::size_t len = 1; pos + len <= p.length(); ++len)
            REQUIRE(alg->is_nonzero_path(p.subpath(q, pos, len)) == Tri::yes);
      }
}

TEST_CASE("opposite algebra transposes pair dimensions") {
  for (const auto& entry : fixtures::corpus()) {
    INFO(entry.name);
    auto op = opposite_algebra(entry.algebra);
    REQUIRE(op->dim() == entry.algebra->dim());
    const std::size_t n = entry.algebra->quiver().vertex_count();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        REQUIRE(op->pair_dim(y, x) == entry.algebra->pair_dim(x, y));
    // Double opposite is pointer-stable.
    REQUIRE(opposite_algebra(op).get() == entry.algebra.get());
  }
}

TEST_CASE("loop classification matches the known verdicts") {
  auto alg = fixtures::loop_cube(one);
  auto rep = classify(alg);
  REQUIRE(rep.locally_left_bounded == Tri::yes);
  REQUIRE(rep.locally_right_bounded == Tri::yes);
  REQUIRE(rep.vertices[0].dim_proj == 3);
  REQUIRE(rep.locally_semiperfect == Tri::no);
  REQUIRE(rep.semiperfect_witness.has_value());
  // The witness is the idempotent a*a, checkable independently.
  auto w = *rep.semiperfect_witness;
  REQUIRE(alg->multiply(w, w) == w);
  REQUIRE(!w.is_zero());
  REQUIRE(!(w == alg->idempotent(0)));
  REQUIRE(alg->element_str(w) == "a*a");
  // Infinitely many nonzero paths: not locally semiprimary, with a witness.
  REQUIRE(rep.locally_semiprimary == Tri::no);
  REQUIRE(rep.semiprimary_witness.has_value());
  auto [prefix, cycle] = *rep.semiprimary_witness;
  REQUIRE(alg->is_nonzero_path(prefix) == Tri::yes);
  auto pumped = compose(alg->quiver(), cycle, prefix);
  REQUIRE(pumped);
  REQUIRE(alg->is_nonzero_path(*pumped) == Tri::yes);
  // Still eventually multiserial (single chain of powers).
  REQUIRE(rep.left_eventually_multiserial == Tri::yes);
  REQUIRE(rep.vertices[0].multiserial_left_n == 0);
}

TEST_CASE("bound A3 classification and conclusions") {
  auto alg = fixtures::a3_bound(one);
  auto rep = classify(alg);
  REQUIRE(rep.locally_semiperfect == Tri::yes);
  REQUIRE(rep.locally_semiprimary == Tri::yes);
  REQUIRE(rep.locally_left_bounded == Tri::yes);
  REQUIRE(rep.locally_right_bounded == Tri::yes);
  REQUIRE(rep.left_eventually_multiserial == Tri::yes);
  REQUIRE(rep.right_eventually_multiserial == Tri::yes);
  for (const auto& v : rep.vertices) {
    REQUIRE(v.multiserial_left_n == 0);
    REQUIRE(v.multiserial_right_n == 0);
  }
  auto conclusions = ass_theorem_conclusions(rep);
  bool fp_left = false, fcp_right = false;
  for (const auto& c : conclusions) {
    REQUIRE(c.status == Tri::yes);
    if (c.id == "fp_left") fp_left = true;
    if (c.id == "fcp_right") fcp_right = true;
  }
  REQUIRE(fp_left);
  REQUIRE(fcp_right);
}

TEST_CASE("loop algebra yields no almost split conclusions") {
  auto rep = classify(fixtures::loop_cube(one));
  REQUIRE(ass_theorem_conclusions(rep).empty());
}

TEST_CASE("undecided algebra propagates to conclusions") {
  Quiver q({"x"}, {{"a", 0, 0}});
  auto alg = build_algebra<Rational>(q, std::vector<PathCombo<Rational>>{}, one, {8, 8});
  auto rep = classify(alg);
  REQUIRE(rep.locally_semiperfect == Tri::undecided);
  REQUIRE(rep.locally_semiprimary == Tri::undecided);
  auto conclusions = ass_theorem_conclusions(rep);
  REQUIRE(!conclusions.empty());
  for (const auto& c : conclusions) REQUIRE(c.status == Tri::undecided);
}

TEST_CASE("window classification: multiserial on interior vertices") {
  auto alg = fixtures::window_fp(one);
  auto rep = classify(alg);
  REQUIRE(rep.locally_semiperfect == Tri::yes);
  REQUIRE(rep.locally_semiprimary == Tri::yes);
  REQUIRE(rep.left_eventually_multiserial == Tri::yes);
  REQUIRE(rep.right_eventually_multiserial == Tri::yes);
  for (const auto& v : rep.vertices) {
    REQUIRE(v.multiserial_left == Tri::yes);
    REQUIRE(v.multiserial_right == Tri::yes);
  }
}

TEST_CASE("relation validation") {
  Quiver q({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}});
  // Length-1 monomial.
  PathCombo<Rational> bad1;
  add_term(bad1, mono(q, {"a"}), one);
  REQUIRE_THROWS_AS(make_relation_ideal(q, std::vector<PathCombo<Rational>>{bad1}),
                    input_error);
  // Non-parallel monomials (a*a is not even composable; use distinct pairs).
  PathCombo<Rational> bad2;
  add_term(bad2, mono(q, {"b", "a"}), one);
  Quiver q2({"1", "2"}, {{"a", 0, 1}, {"b", 1, 0}});
  PathCombo<Rational> ba, ab;
  add_term(ba, mono(q2, {"b", "a"}), one);
  add_term(ab, mono(q2, {"a", "b"}), one);
  PathCombo<Rational> mixed = ba;
  for (const auto& [w, c] : ab) add_term(mixed, w, c);
  REQUIRE_THROWS_AS(make_relation_ideal(q2, std::vector<PathCombo<Rational>>{mixed}),
                    input_error);
}

TEST_CASE("build caps are validated") {
  Quiver q({"x"}, {{"a", 0, 0}});
  REQUIRE_THROWS_AS(
      build_algebra<Rational>(q, std::vector<PathCombo<Rational>>{}, one, {1, 8}),
      input_error);
}

TEST_CASE("prime field algebra") {
  const Fp f2(1, 2);
  auto alg = fixtures::a3_bound(f2);
  REQUIRE(alg->dim() == 5);
  auto rep = classify(alg);
  REQUIRE(rep.locally_semiperfect == Tri::yes);
  auto lc = fixtures::loop_cube(f2);
  auto rep2 = classify(lc);
  REQUIRE(rep2.locally_semiperfect == Tri::no);  // witness scan avoids the trace form
}
