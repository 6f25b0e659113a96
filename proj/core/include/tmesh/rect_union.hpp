#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace tmesh {

/// Closed axis-aligned rectangle [u0,u1] x [v0,v1] in a coordinate plane.
/// Degenerate rectangles (segments, points) are allowed.
template <class T>
struct Rect {
  T u0, u1, v0, v1;

  bool contains(const T& u, const T& v) const { return !(u < u0) && !(u1 < u) && !(v < v0) && !(v1 < v); }
  bool intersects(const Rect& o) const { return !(u1 < o.u0) && !(o.u1 < u0) && !(v1 < o.v0) && !(o.v1 < v0); }
  Rect intersection(const Rect& o) const {
    return {std::max(u0, o.u0), std::min(u1, o.u1), std::max(v0, o.v0), std::min(v1, o.v1)};
  }
  bool operator==(const Rect&) const = default;
  bool operator<(const Rect& o) const {
    if (u0 != o.u0) return u0 < o.u0;
    if (u1 != o.u1) return u1 < o.u1;
    if (v0 != o.v0) return v0 < o.v0;
    return v1 < o.v1;
  }
};

/// Finite union of closed rectangles, kept in a canonical form that depends
/// only on the point set: the plane is swept along u (lines and open strips
/// between breakpoints alternately), and maximal runs of cells with an
/// identical v-cross-section become rectangles.
template <class T>
class RectUnion2D {
 public:
  using RectT = Rect<T>;

  RectUnion2D() = default;
  explicit RectUnion2D(std::vector<RectT> rects) : rects_(canonicalize(std::move(rects))) {}

  const std::vector<RectT>& rects() const { return rects_; }
  bool empty() const { return rects_.empty(); }

  bool contains(const T& u, const T& v) const {
    return std::any_of(rects_.begin(), rects_.end(), [&](const RectT& r) { return r.contains(u, v); });
  }
  bool intersects(const RectT& r) const {
    return std::any_of(rects_.begin(), rects_.end(), [&](const RectT& q) { return q.intersects(r); });
  }

  RectUnion2D intersect(const RectUnion2D& other) const {
    std::vector<RectT> pieces;
    for (const auto& a : rects_)
      for (const auto& b : other.rects_)
        if (a.intersects(b)) pieces.push_back(a.intersection(b));
    return RectUnion2D(std::move(pieces));
  }
  RectUnion2D intersect(const RectT& r) const {
    std::vector<RectT> pieces;
    for (const auto& a : rects_)
      if (a.intersects(r)) pieces.push_back(a.intersection(r));
    return RectUnion2D(std::move(pieces));
  }
  RectUnion2D unite(const RectUnion2D& other) const {
    std::vector<RectT> all = rects_;
    all.insert(all.end(), other.rects_.begin(), other.rects_.end());
    return RectUnion2D(std::move(all));
  }

  /// Points of the v-line {u = value} covered by the union, as closed intervals.
  std::vector<std::pair<T, T>> cross_section(const T& u) const {
    std::vector<std::pair<T, T>> iv;
    for (const auto& r : rects_)
      if (!(u < r.u0) && !(r.u1 < u)) iv.push_back({r.v0, r.v1});
    return merge(std::move(iv));
  }
  /// Points of the u-line {v = value} covered by the union.
  std::vector<std::pair<T, T>> cross_section_v(const T& v) const {
    std::vector<std::pair<T, T>> iv;
    for (const auto& r : rects_)
      if (!(v < r.v0) && !(r.v1 < v)) iv.push_back({r.u0, r.u1});
    return merge(std::move(iv));
  }

  bool operator==(const RectUnion2D&) const = default;

  template <class F>
  auto map(F&& f) const -> RectUnion2D<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    std::vector<Rect<U>> out;
    out.reserve(rects_.size());
    for (const auto& r : rects_) out.push_back({f(r.u0), f(r.u1), f(r.v0), f(r.v1)});
    return RectUnion2D<U>::from_canonical(std::move(out));
  }

  /// Wraps rectangles already in canonical form (e.g. produced by an
  /// order-preserving coordinate map of a canonical union).
  static RectUnion2D from_canonical(std::vector<RectT> rects) {
    RectUnion2D u;
    u.rects_ = std::move(rects);
    return u;
  }

  using Interval = std::pair<T, T>;

  /// Union of closed intervals as sorted disjoint closed intervals.
  static std::vector<Interval> merge(std::vector<Interval> iv) {
    std::sort(iv.begin(), iv.end());
    std::vector<Interval> out;
    for (auto& i : iv) {
      if (!out.empty() && !(out.back().second < i.first)) {
        if (out.back().second < i.second) out.back().second = i.second;
      } else {
        out.push_back(i);
      }
    }
    return out;
  }

 private:
  static std::vector<RectT> canonicalize(std::vector<RectT> rects) {
    std::erase_if(rects, [](const RectT& r) { return r.u1 < r.u0 || r.v1 < r.v0; });
    if (rects.empty()) return {};
    std::vector<T> us;
    us.reserve(rects.size() * 2);
    for (const auto& r : rects) {
      us.push_back(r.u0);
      us.push_back(r.u1);
    }
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    const auto idx = [&](const T& u) {
      return static_cast<std::size_t>(std::lower_bound(us.begin(), us.end(), u) - us.begin());
    };
    // Doubled cell index: 2i is the line u = us[i], 2i+1 the open strip
    // (us[i], us[i+1]).
    const std::size_t cells = 2 * us.size() - 1;
    std::vector<std::vector<Interval>> section(cells);
    for (const auto& r : rects) {
      const std::size_t a = 2 * idx(r.u0);
      const std::size_t b = 2 * idx(r.u1);
      for (std::size_t c = a; c <= b; ++c) section[c].push_back({r.v0, r.v1});
    }
    for (auto& s : section) s = merge(std::move(s));

    struct Run {
      std::size_t first, last;
    };
    std::vector<Run> runs;
    for (std::size_t c = 0; c < cells; ++c) {
      if (section[c].empty()) continue;
      if (!runs.empty() && runs.back().last + 1 == c && section[runs.back().last] == section[c]) {
        runs.back().last = c;
      } else {
        runs.push_back({c, c});
      }
    }
    // A run that is a single line is partly covered by the closures of the
    // neighbouring strips; keep only the intervals those do not cover.
    for (const Run& run : runs) {
      const std::size_t c = run.first;
      if (run.last != c || c % 2 != 0) continue;
      std::vector<Interval> near;
      if (c > 0) near = section[c - 1];
      if (c + 1 < cells) near.insert(near.end(), section[c + 1].begin(), section[c + 1].end());
      near = merge(std::move(near));
      std::erase_if(section[c], [&](const Interval& i) {
        return std::any_of(near.begin(), near.end(),
                           [&](const Interval& n) { return !(i.first < n.first) && !(n.second < i.second); });
      });
    }
    const auto lower = [&](std::size_t c) { return us[c / 2]; };
    const auto upper = [&](std::size_t c) { return us[(c + 1) / 2]; };

    std::vector<RectT> out;
    for (const Run& run : runs)
      for (const auto& v : section[run.first]) out.push_back({lower(run.first), upper(run.last), v.first, v.second});
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<RectT> rects_;
};

}  // namespace tmesh
