#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "tauq/field.hpp"
#include "tauq/quiver.hpp"

namespace tauq {

/// Formal k-linear combination of paths, ordered by the canonical path
/// order. No explicit zero coefficients are stored.
template <scalar_field K>
using PathCombo = std::map<Path, K, PathLess>;

template <scalar_field K>
void add_term(PathCombo<K>& c, const Path& w, const K& coef) {
  if (field_ops<K>::is_zero(coef)) return;
  auto [it, inserted] = c.emplace(w, coef);
  if (!inserted) {
    it->second = it->second + coef;
    if (field_ops<K>::is_zero(it->second)) c.erase(it);
  }
}

template <scalar_field K>
PathCombo<K> combo_scaled(const PathCombo<K>& c, const K& s) {
  PathCombo<K> out;
  for (const auto& [w, coef] : c) add_term(out, w, coef * s);
  return out;
}

template <scalar_field K>
void combo_add(PathCombo<K>& dst, const PathCombo<K>& src, const K& s) {
  for (const auto& [w, coef] : src) add_term(dst, w, coef * s);
}

/// One oriented reduction: lhs is a single path of length >= 2, rhs a
/// combination of strictly smaller parallel paths.
template <scalar_field K>
struct RewriteRule {
  Path lhs;
  PathCombo<K> rhs;
};

/// Noncommutative rewriting on paths with Buchberger-style overlap
/// completion, capped by a maximal lhs degree. Rules always rewrite the
/// larger monomial to smaller ones, so reduction terminates.
template <scalar_field K>
class RewriteSystem {
 public:
  RewriteSystem(Quiver q, K one) : q_(std::move(q)), one_(std::move(one)) {}

  const Quiver& quiver() const { return q_; }
  const std::vector<RewriteRule<K>>& rules() const { return rules_; }

  /// Fixed point of the rewrite relation on a combination.
  PathCombo<K> reduce(PathCombo<K> c) const {
    for (;;) {
      bool changed = false;
      for (auto it = c.rbegin(); it != c.rend(); ++it) {
        const Path w = it->first;
        const K coef = it->second;
        for (const auto& rule : rules_) {
          auto pos = find_occurrence(w, rule.lhs);
          if (!pos) continue;
          add_term(c, w, -coef);
          for (const auto& [rw, rc] : rule.rhs)
            add_term(c, splice(w, *pos, rule.lhs.length(), rw), coef * rc);
          changed = true;
          break;
        }
        if (changed) break;
      }
      if (!changed) return c;
    }
  }

  /// Runs overlap completion starting from the generators. Returns true if
  /// the system closed up within the degree cap; on false the partial rules
  /// are kept and normal forms are only certified up to the cap.
  bool complete(const std::vector<PathCombo<K>>& generators, std::size_t max_degree,
                std::size_t max_rules = 4096) {
    std::deque<PathCombo<K>> queue(generators.begin(), generators.end());
    while (!queue.empty()) {
      PathCombo<K> c = reduce(std::move(queue.front()));
      queue.pop_front();
      if (c.empty()) continue;
      const Path lead = c.rbegin()->first;
      const K lead_coef = c.rbegin()->second;
      if (lead.length() < 2)
        throw internal_error("rewrite lead of length < 2; relation ideal violated");
      if (lead.length() > max_degree) return false;
      c.erase(lead);
      RewriteRule<K> rule{lead, combo_scaled(c, -field_ops<K>::inv(lead_coef))};
      for (const auto& other : rules_) {
        enqueue_spolys(rule, other, queue);
        enqueue_spolys(other, rule, queue);
      }
      enqueue_spolys(rule, rule, queue);
      rules_.push_back(std::move(rule));
      if (rules_.size() > max_rules) return false;
    }
    inter_reduce();
    return true;
  }

  bool word_irreducible(const Path& w) const {
    for (const auto& rule : rules_)
      if (find_occurrence(w, rule.lhs)) return false;
    return true;
  }

  /// True when the only possible occurrence is the suffix ending at the last
  /// arrow; used when extending known-irreducible words by one arrow.
  bool suffix_irreducible(const Path& w) const {
    for (const auto& rule : rules_) {
      const std::size_t m = rule.lhs.length();
      if (m > w.length()) continue;
      if (matches_at(w, rule.lhs, w.length() - m)) return false;
    }
    return true;
  }

 private:
  static bool matches_at(const Path& w, const Path& lhs, std::size_t pos) {
    for (std::size_t i = 0; i < lhs.length(); ++i)
      if (w.arrows()[pos + i] != lhs.arrows()[i]) return false;
    return true;
  }

  static std::optional<std::size_t> find_occurrence(const Path& w, const Path& lhs) {
    if (lhs.length() > w.length()) return std::nullopt;
    for (std::size_t pos = 0; pos + lhs.length() <= w.length(); ++pos)
      if (matches_at(w, lhs, pos)) return pos;
    return std::nullopt;
  }

  Path splice(const Path& w, std::size_t pos, std::size_t len, const Path& repl) const {
    std::vector<std::size_t> arrows(w.arrows().begin(), w.arrows().begin() + pos);
    arrows.insert(arrows.end(), repl.arrows().begin(), repl.arrows().end());
    arrows.insert(arrows.end(), w.arrows().begin() + pos + len, w.arrows().end());
    if (arrows.empty()) return Path::trivial(w.source());
    return Path::of_arrows(q_, std::move(arrows));
  }

  /// Critical pairs with r1 placed at position 0 of the overlap word:
  /// proper suffix/prefix overlaps, plus r2 contained inside r1.
  void enqueue_spolys(const RewriteRule<K>& r1, const RewriteRule<K>& r2,
                      std::deque<PathCombo<K>>& queue) const {
    const auto& w1 = r1.lhs.arrows();
    const auto& w2 = r2.lhs.arrows();
    const std::size_t n1 = w1.size(), n2 = w2.size();
    for (std::size_t k = 1; k < std::min(n1, n2); ++k) {
      bool match = true;
      for (std::size_t i = 0; i < k && match; ++i) match = w1[n1 - k + i] == w2[i];
      if (!match) continue;
      std::vector<std::size_t> overlap(w1.begin(), w1.end());
      overlap.insert(overlap.end(), w2.begin() + k, w2.end());
      const Path w = Path::of_arrows(q_, std::move(overlap));
      PathCombo<K> s;
      for (const auto& [rw, rc] : r1.rhs) add_term(s, splice(w, 0, n1, rw), rc);
      for (const auto& [rw, rc] : r2.rhs) add_term(s, splice(w, n1 - k, n2, rw), -rc);
      queue.push_back(std::move(s));
    }
    if (n2 <= n1) {
      for (std::size_t t = 0; t + n2 <= n1; ++t) {
        // Identical placement of equal-length lhs is the trivial pair.
        if (n1 == n2 && t == 0) continue;
        if (!matches_at(r1.lhs, r2.lhs, t)) continue;
        PathCombo<K> s = r1.rhs;
        for (const auto& [rw, rc] : r2.rhs)
          add_term(s, splice(r1.lhs, t, n2, rw), -rc);
        queue.push_back(std::move(s));
      }
    }
  }

  /// Keeps only rules whose lhs no other rule reduces, with fully reduced
  /// right-hand sides, sorted canonically. Normal forms are unchanged.
  void inter_reduce() {
    std::vector<RewriteRule<K>> kept;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < rules_.size() && !redundant; ++j)
        if (j != i && find_occurrence(rules_[i].lhs, rules_[j].lhs)) redundant = true;
      if (!redundant) kept.push_back(rules_[i]);
    }
    for (auto& rule : kept) rule.rhs = reduce(rule.rhs);
    std::sort(kept.begin(), kept.end(),
              [](const RewriteRule<K>& a, const RewriteRule<K>& b) {
                return path_less(a.lhs, b.lhs);
              });
    rules_ = std::move(kept);
  }

  Quiver q_;
  K one_;
  std::vector<RewriteRule<K>> rules_;
};

}  // namespace tauq
