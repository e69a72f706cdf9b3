#pragma once

// Suits, point sets, the hat transform and the box number.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dbox/box.hpp"
#include "dbox/numeric.hpp"

namespace dbox {

/// A validated list of pairwise dichotomous boxes.
class Suit {
 public:
  /// Throws NotDichotomous(i, j) for the first offending pair and
  /// NotProper(i) when `require_proper` and box i is improper.
  static Suit verify(BoxSpace space, std::vector<Box> boxes, bool require_proper = false) {
    if (boxes.empty()) throw Error(ErrorCode::InvalidArgument, "a suit needs at least one box");
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      check_box(space, boxes[i]);
      if (require_proper && !is_proper(space, boxes[i])) {
        throw Error(ErrorCode::NotProper, "box " + std::to_string(i) + " is not proper", {i});
      }
    }
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      for (std::size_t j = i + 1; j < boxes.size(); ++j) {
        if (!is_dichotomous(space, boxes[i], boxes[j])) {
          throw Error(ErrorCode::NotDichotomous,
                      "boxes " + std::to_string(i) + " and " + std::to_string(j) + " are not dichotomous",
                      {i, j});
        }
      }
    }
    return Suit(std::move(space), std::move(boxes));
  }

  const BoxSpace& space() const noexcept { return space_; }
  const std::vector<Box>& boxes() const noexcept { return boxes_; }
  std::size_t size() const noexcept { return boxes_.size(); }

  bool proper() const {
    for (const Box& b : boxes_) {
      if (!is_proper(space_, b)) return false;
    }
    return true;
  }

 private:
  Suit(BoxSpace space, std::vector<Box> boxes) : space_(std::move(space)), boxes_(std::move(boxes)) {}

  BoxSpace space_;
  std::vector<Box> boxes_;
};

using Point = std::vector<int>;

/// Subset of the points of X, stored densely in lexicographic order.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(BoxSpace space) : space_(std::move(space)), bits_(space_.point_count(), false) {}

  const BoxSpace& space() const noexcept { return space_; }

  std::size_t index_of(const Point& p) const {
    if (p.size() != space_.d()) throw Error(ErrorCode::SpaceMismatch, "point has wrong dimension");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < 0 || p[i] >= space_.size(i)) {
        throw Error(ErrorCode::SpaceMismatch, "point coordinate " + std::to_string(i) + " out of range", {i});
      }
      idx = idx * static_cast<std::size_t>(space_.size(i)) + static_cast<std::size_t>(p[i]);
    }
    return idx;
  }

  Point point_at(std::size_t idx) const {
    Point p(space_.d());
    for (std::size_t i = space_.d(); i-- > 0;) {
      const auto n = static_cast<std::size_t>(space_.size(i));
      p[i] = static_cast<int>(idx % n);
      idx /= n;
    }
    return p;
  }

  void insert(const Point& p) { bits_[index_of(p)] = true; }
  void insert_index(std::size_t idx) { bits_.at(idx) = true; }
  void erase_index(std::size_t idx) { bits_.at(idx) = false; }
  bool contains(const Point& p) const { return bits_[index_of(p)]; }
  bool contains_index(std::size_t idx) const { return bits_[idx]; }

  std::size_t universe_size() const noexcept { return bits_.size(); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (bool b : bits_) c += b ? 1 : 0;
    return c;
  }

  bool empty() const noexcept { return count() == 0; }

  std::vector<Point> members() const {
    std::vector<Point> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) out.push_back(point_at(i));
    }
    return out;
  }

  bool operator==(const PointSet&) const = default;

 private:
  BoxSpace space_;
  std::vector<bool> bits_;
};

/// Calls f(index) for every point of box b, in lexicographic order.
template <typename F>
void for_each_point_index(const BoxSpace& space, const Box& b, F&& f) {
  const std::size_t d = space.d();
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t prefix) {
    if (i == d) {
      f(prefix);
      return;
    }
    const auto n = static_cast<std::size_t>(space.size(i));
    for (Mask m = b[i]; m != 0; m &= m - 1) {
      const auto e = static_cast<std::size_t>(std::countr_zero(m));
      rec(i + 1, prefix * n + e);
    }
  };
  rec(0, 0);
}

inline PointSet box_points(const BoxSpace& space, const Box& b) {
  check_box(space, b);
  PointSet s(space);
  for_each_point_index(space, b, [&](std::size_t idx) { s.insert_index(idx); });
  return s;
}

inline PointSet union_points(const Suit& s) {
  PointSet out(s.space());
  for (const Box& b : s.boxes()) {
    for_each_point_index(s.space(), b, [&](std::size_t idx) { out.insert_index(idx); });
  }
  return out;
}

/// |G^| for an arbitrary point set: the number of tuples of odd-size
/// factor subsets (A_1..A_d) with |G n A_1 x ... x A_d| odd.
///
/// Computed as a separable GF(2) transform, one axis at a time: along axis i
/// every line of n_i values is replaced by the 2^(n_i-1) parities of its
/// odd-size subsets.
inline std::uint64_t hat_cardinality(const PointSet& g, Budget budget = {}) {
  const BoxSpace& space = g.space();
  require_budget(space.norm1(), budget, "hat transform");
  const std::size_t d = space.d();

  std::vector<std::size_t> shape(space.dims().begin(), space.dims().end());
  std::vector<std::uint8_t> data(g.universe_size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = g.contains_index(i) ? 1 : 0;

  for (std::size_t axis = 0; axis < d; ++axis) {
    const int n = space.size(axis);
    std::vector<Mask> odd;
    for (Mask m = 1; m < (Mask{1} << n); ++m) {
      if (popcount(m) % 2 == 1) odd.push_back(m);
    }
    std::size_t outer = 1;
    for (std::size_t j = 0; j < axis; ++j) outer *= shape[j];
    std::size_t inner = 1;
    for (std::size_t j = axis + 1; j < d; ++j) inner *= shape[j];

    const std::size_t old_len = shape[axis];
    const std::size_t new_len = odd.size();
    std::vector<std::uint8_t> next(outer * new_len * inner);
    std::vector<std::uint8_t> parity(std::size_t{1} << n);
    std::vector<std::uint8_t> line(old_len);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t t = 0; t < inner; ++t) {
        for (std::size_t x = 0; x < old_len; ++x) line[x] = data[(o * old_len + x) * inner + t];
        parity[0] = 0;
        for (Mask m = 1; m < (Mask{1} << n); ++m) {
          parity[m] = parity[m & (m - 1)] ^ line[static_cast<std::size_t>(std::countr_zero(m))];
        }
        for (std::size_t k = 0; k < new_len; ++k) next[(o * new_len + k) * inner + t] = parity[odd[k]];
      }
    }
    data = std::move(next);
    shape[axis] = new_len;
  }

  std::uint64_t count = 0;
  for (std::uint8_t v : data) count += v;
  return count;
}

/// |B^| for a box, via the product formula B^ = O B_1 x ... x O B_d.
inline BigInt hat_cardinality(const BoxSpace& space, const Box& b) {
  check_box(space, b);
  BigInt c = 1;
  for (std::size_t i = 0; i < space.d(); ++i) {
    // Odd subsets of X_i meeting B_i oddly: all of them if B_i = X_i,
    // otherwise exactly half.
    const int exponent = (b[i] == space.full(i)) ? space.size(i) - 1 : space.size(i) - 2;
    c <<= exponent;
  }
  return c;
}

/// 2^(|X|_1 - 2d), the hat size of any proper box.
inline BigInt proper_hat_size(const BoxSpace& space) {
  BigInt c = 1;
  c <<= space.norm1() - 2 * static_cast<int>(space.d());
  return c;
}

/// |G|_0 = |G^| / 2^(|X|_1 - 2d), exact.
inline Rational box_number(const PointSet& g, Budget budget = {}) {
  return Rational(BigInt(hat_cardinality(g, budget)), proper_hat_size(g.space()));
}

namespace detail {

/// Depth-first search for a partition of `remaining` into exactly `parts_left`
/// proper, pairwise dichotomous boxes.  The box covering the lexicographically
/// least uncovered point is chosen first; factor candidates run over subsets of
/// the line through that point inside `remaining`.
inline bool suit_partition_search(const BoxSpace& space, PointSet& remaining, std::size_t parts_left,
                                  std::vector<Box>& chosen) {
  std::size_t first = remaining.universe_size();
  for (std::size_t i = 0; i < remaining.universe_size(); ++i) {
    if (remaining.contains_index(i)) {
      first = i;
      break;
    }
  }
  if (first == remaining.universe_size()) return parts_left == 0;
  if (parts_left == 0) return false;

  const Point p = remaining.point_at(first);
  const std::size_t d = space.d();
  std::vector<Mask> line(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    Point q = p;
    for (int x = 0; x < space.size(i); ++x) {
      q[i] = x;
      if (remaining.contains(q)) line[i] |= Mask{1} << x;
    }
  }

  Box candidate;
  candidate.factors.assign(d, 0);
  const Mask one = Mask{1};
  std::function<bool(std::size_t)> pick = [&](std::size_t i) -> bool {
    if (i == d) {
      for (const Box& c : chosen) {
        if (!is_dichotomous(space, c, candidate)) return false;
      }
      bool inside = true;
      for_each_point_index(space, candidate, [&](std::size_t idx) {
        if (!remaining.contains_index(idx)) inside = false;
      });
      if (!inside) return false;
      for_each_point_index(space, candidate, [&](std::size_t idx) { remaining.erase_index(idx); });
      chosen.push_back(candidate);
      if (suit_partition_search(space, remaining, parts_left - 1, chosen)) return true;
      chosen.pop_back();
      for_each_point_index(space, candidate, [&](std::size_t idx) { remaining.insert_index(idx); });
      return false;
    }
    const Mask pin = one << p[i];
    const Mask free = line[i] & ~pin;
    // Enumerate subsets of `free`, each joined with the pinned element.
    Mask sub = 0;
    do {
      const Mask m = sub | pin;
      if (m != space.full(i)) {
        candidate.factors[i] = m;
        if (pick(i + 1)) return true;
      }
      sub = (sub - free) & free;
    } while (sub != 0);
    return false;
  };
  return pick(0);
}

}  // namespace detail

/// A proper suit whose union is g, of size |g|_0, if one exists.
inline std::optional<std::vector<Box>> find_suit_partition(const PointSet& g, Budget budget = {}) {
  const Rational bn = box_number(g, budget);
  if (bn <= 0 || !is_integer(bn)) return std::nullopt;
  const auto parts = static_cast<std::size_t>(boost::multiprecision::numerator(bn));
  PointSet remaining = g;
  std::vector<Box> chosen;
  if (detail::suit_partition_search(g.space(), remaining, parts, chosen)) return chosen;
  return std::nullopt;
}

/// True iff g admits a partition into |g|_0 proper boxes.
inline bool is_polybox(const PointSet& g, Budget budget = {}) { return find_suit_partition(g, budget).has_value(); }

/// Decides minimality of a partition of g into proper boxes two ways
/// (size equals |g|_0; the parts form a suit) and insists they agree.
inline bool is_minimal_partition(const std::vector<Box>& parts, const PointSet& g, Budget budget = {}) {
  const BoxSpace& space = g.space();
  PointSet covered(space);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    check_box(space, parts[k]);
    if (!is_proper(space, parts[k])) {
      throw Error(ErrorCode::NotProper, "part " + std::to_string(k) + " is not proper", {k});
    }
    bool overlap = false;
    for_each_point_index(space, parts[k], [&](std::size_t idx) {
      if (covered.contains_index(idx) || !g.contains_index(idx)) overlap = true;
      covered.insert_index(idx);
    });
    if (overlap) {
      throw Error(ErrorCode::NotAPartition, "part " + std::to_string(k) + " overlaps another part or leaves g",
                  {k});
    }
  }
  if (!(covered == g)) throw Error(ErrorCode::NotAPartition, "parts do not cover g");

  const bool by_size = Rational(parts.size()) == box_number(g, budget);
  bool by_suit = true;
  for (std::size_t i = 0; i < parts.size() && by_suit; ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!is_dichotomous(space, parts[i], parts[j])) {
        by_suit = false;
        break;
      }
    }
  }
  if (by_size != by_suit) {
    throw Error(ErrorCode::CriteriaDisagree, "box-number and suit tests disagree on minimality");
  }
  return by_size;
}

/// True iff the concatenation of two proper suits with disjoint unions is a suit.
inline bool strongly_disjoint(const Suit& f, const Suit& g) {
  if (!(f.space() == g.space())) throw Error(ErrorCode::SpaceMismatch, "suits live in different spaces");
  const PointSet uf = union_points(f);
  const PointSet ug = union_points(g);
  for (std::size_t i = 0; i < uf.universe_size(); ++i) {
    if (uf.contains_index(i) && ug.contains_index(i)) {
      throw Error(ErrorCode::UnionsOverlap, "the two polyboxes share a point");
    }
  }
  for (const Box& a : f.boxes()) {
    for (const Box& b : g.boxes()) {
      if (!is_dichotomous(f.space(), a, b)) return false;
    }
  }
  return true;
}

}  // namespace dbox
