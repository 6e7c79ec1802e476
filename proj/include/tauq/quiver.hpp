#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tauq/error.hpp"

namespace tauq {

struct Arrow {
  std::string id;
  std::size_t src;
  std::size_t tgt;
};

/// Finite quiver: ordered vertices and arrows. Infinite quivers enter the
/// library only as user-supplied finite windows (see the workspace layer's
/// boundary annotations).
class Quiver {
 public:
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (!ids_.emplace(vertices_[i], i).second)
        throw input_error("duplicate id: " + vertices_[i]);
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      const Arrow& a = arrows_[i];
      if (a.src >= vertices_.size() || a.tgt >= vertices_.size())
        throw input_error("arrow endpoint out of range: " + a.id);
      if (!ids_.emplace(a.id, vertices_.size() + i).second)
        throw input_error("duplicate id: " + a.id);
    }
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& vertex_id(std::size_t i) const { return vertices_[i]; }
  const Arrow& arrow(std::size_t i) const { return arrows_[i]; }

  std::size_t vertex_index(const std::string& id) const {
    auto it = ids_.find(id);
    if (it == ids_.end() || it->second >= vertices_.size())
      throw input_error("unknown vertex: " + id);
    return it->second;
  }

  std::size_t arrow_index(const std::string& id) const {
    auto it = ids_.find(id);
    if (it == ids_.end() || it->second < vertices_.size())
      throw input_error("unknown arrow: " + id);
    return it->second - vertices_.size();
  }

  /// Same vertices; every arrow reversed, ids and declaration order kept.
  Quiver opposite() const {
    std::vector<Arrow> rev;
    rev.reserve(arrows_.size());
    for (const Arrow& a : arrows_) rev.push_back({a.id, a.tgt, a.src});
    return Quiver(vertices_, std::move(rev));
  }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    if (a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size()) return false;
    for (std::size_t i = 0; i < a.arrows_.size(); ++i)
      if (a.arrows_[i].id != b.arrows_[i].id || a.arrows_[i].src != b.arrows_[i].src ||
          a.arrows_[i].tgt != b.arrows_[i].tgt)
        return false;
    return true;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::size_t> ids_;
};

/// A path. Arrows are stored in traversal order (first arrow applied first);
/// a length-0 path carries exactly its base vertex.
class Path {
 public:
  static Path trivial(std::size_t vertex) { return Path(vertex, {}); }

  static Path of_arrows(const Quiver& q, std::vector<std::size_t> arrows) {
    if (arrows.empty()) throw input_error("of_arrows needs at least one arrow");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
      if (q.arrow(arrows[i]).tgt != q.arrow(arrows[i + 1]).src)
        throw input_error("non-composable arrow sequence");
    const std::size_t src = q.arrow(arrows.front()).src;
    return Path(src, std::move(arrows));
  }

  std::size_t length() const { return arrows_.size(); }
  bool is_trivial() const { return arrows_.empty(); }
  const std::vector<std::size_t>& arrows() const { return arrows_; }

  std::size_t source() const { return base_; }
  std::size_t target(const Quiver& q) const {
    return arrows_.empty() ? base_ : q.arrow(arrows_.back()).tgt;
  }

  /// Contiguous subpath of `len` arrows starting at position `pos`.
  Path subpath(const Quiver& q, std::size_t pos, std::size_t len) const {
    if (pos + len > arrows_.size()) throw shape_error("subpath out of range");
    if (len == 0) {
      std::size_t v = pos == 0 ? base_ : q.arrow(arrows_[pos - 1]).tgt;
      return trivial(v);
    }
    std::vector<std::size_t> sub(arrows_.begin() + pos, arrows_.begin() + pos + len);
    const std::size_t src = q.arrow(sub.front()).src;
    return Path(src, std::move(sub));
  }

  std::string str(const Quiver& q) const {
    if (arrows_.empty()) return "e_" + q.vertex_id(base_);
    // Printed right to left, matching the composition convention.
    std::string s;
    for (auto it = arrows_.rbegin(); it != arrows_.rend(); ++it) {
      if (!s.empty()) s += "*";
      s += q.arrow(*it).id;
    }
    return s;
  }

  friend bool operator==(const Path& a, const Path& b) {
    return a.base_ == b.base_ && a.arrows_ == b.arrows_;
  }

 private:
  Path(std::size_t base, std::vector<std::size_t> arrows)
      : base_(base), arrows_(std::move(arrows)) {}

  std::size_t base_;
  std::vector<std::size_t> arrows_;
};

/// Canonical path order: by length, then lexicographically on the traversal
/// sequence of arrow indices, then by base vertex. This order is admissible
/// for concatenation and is the monomial order used everywhere downstream.
inline bool path_less(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.arrows() != b.arrows()) return a.arrows() < b.arrows();
  return a.source() < b.source();
}

struct PathLess {
  bool operator()(const Path& a, const Path& b) const { return path_less(a, b); }
};

/// p after q (first q, then p); absent when endpoints do not match.
inline std::optional<Path> compose(const Quiver& q, const Path& p, const Path& r) {
  if (p.source() != r.target(q)) return std::nullopt;
  if (r.is_trivial()) return p;
  if (p.is_trivial()) return r;
  std::vector<std::size_t> arrows = r.arrows();
  arrows.insert(arrows.end(), p.arrows().begin(), p.arrows().end());
  return Path::of_arrows(q, std::move(arrows));
}

/// All paths x -> y of length <= max_len in canonical order.
inline std::vector<Path> paths_between(const Quiver& q, std::size_t x, std::size_t y,
                                       std::size_t max_len) {
  if (x >= q.vertex_count() || y >= q.vertex_count())
    throw input_error("paths_between: vertex out of range");
  std::vector<Path> out;
  std::vector<Path> level{Path::trivial(x)};
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const Path& p : level)
      if (p.target(q) == y) out.push_back(p);
    if (len == max_len) break;
    std::vector<Path> next;
    for (const Path& p : level) {
      const std::size_t end = p.target(q);
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (q.arrow(a).src != end) continue;
        std::vector<std::size_t> arrows = p.arrows();
        arrows.push_back(a);
        next.push_back(Path::of_arrows(q, std::move(arrows)));
      }
    }
    level = std::move(next);
  }
  return out;
}

struct LocalFiniteness {
  bool left_locally_finite;
  bool right_locally_finite;
  bool locally_finite;
};

/// Fan-out/fan-in flags; trivially all true on a finite quiver, retained for
/// windowed reports.
inline LocalFiniteness local_finiteness(const Quiver& q) {
  (void)q;
  return {true, true, true};
}

}  // namespace tauq
