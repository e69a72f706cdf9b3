#pragma once

// Ambient d-boxes X = X_1 x ... x X_d and their sub-boxes.
//
// Elements of every factor X_i are the integers 0..n_i-1, so a subset of a
// factor is a single 64-bit mask.  A Box stores only its factor masks; the
// space it lives in is passed explicitly to every operation.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "dbox/error.hpp"

namespace dbox {

using Mask = std::uint64_t;

inline constexpr int kMaxFactorSize = 62;

inline int popcount(Mask m) noexcept { return std::popcount(m); }

/// Mask with the listed elements set.
inline Mask mask_of(std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements) {
    if (e < 0 || e >= kMaxFactorSize) {
      throw Error(ErrorCode::InvalidArgument, "element index " + std::to_string(e) + " out of range");
    }
    m |= Mask{1} << e;
  }
  return m;
}

class BoxSpace {
 public:
  BoxSpace() = default;

  explicit BoxSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
      throw Error(ErrorCode::InvalidArgument, "a box space needs at least one factor");
    }
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (dims_[i] < 2 || dims_[i] > kMaxFactorSize) {
        throw Error(ErrorCode::InvalidArgument,
                    "factor " + std::to_string(i) + " has cardinality " + std::to_string(dims_[i]) +
                        "; must lie in [2, 62]",
                    {i});
      }
    }
  }

  BoxSpace(std::initializer_list<int> dims) : BoxSpace(std::vector<int>(dims)) {}

  std::size_t d() const noexcept { return dims_.size(); }
  int size(std::size_t i) const { return dims_.at(i); }
  const std::vector<int>& dims() const noexcept { return dims_; }

  Mask full(std::size_t i) const { return (Mask{1} << dims_.at(i)) - 1; }

  /// |X|_1 = n_1 + ... + n_d.
  int norm1() const noexcept {
    int s = 0;
    for (int n : dims_) s += n;
    return s;
  }

  /// Number of points of X.
  std::size_t point_count() const noexcept {
    std::size_t c = 1;
    for (int n : dims_) c *= static_cast<std::size_t>(n);
    return c;
  }

  bool operator==(const BoxSpace&) const = default;

 private:
  std::vector<int> dims_;
};

struct Box {
  std::vector<Mask> factors;

  Box() = default;
  explicit Box(std::vector<Mask> masks) : factors(std::move(masks)) {}

  /// Box from per-factor element lists, e.g. Box::of({{0}, {1, 2}}).
  static Box of(std::initializer_list<std::initializer_list<int>> elements) {
    Box b;
    for (auto e : elements) b.factors.push_back(mask_of(e));
    return b;
  }

  std::size_t d() const noexcept { return factors.size(); }
  Mask operator[](std::size_t i) const { return factors[i]; }

  auto operator<=>(const Box&) const = default;
  bool operator==(const Box&) const = default;
};

/// Throws SpaceMismatch unless `b` is a nonempty box of `space`.
inline void check_box(const BoxSpace& space, const Box& b) {
  if (b.d() != space.d()) {
    throw Error(ErrorCode::SpaceMismatch, "box has " + std::to_string(b.d()) + " factors, space has " +
                                              std::to_string(space.d()));
  }
  for (std::size_t i = 0; i < b.d(); ++i) {
    if (b[i] == 0) {
      throw Error(ErrorCode::InvalidArgument, "factor " + std::to_string(i) + " of a box is empty", {i});
    }
    if ((b[i] & ~space.full(i)) != 0) {
      throw Error(ErrorCode::SpaceMismatch, "factor " + std::to_string(i) + " has elements outside X_" +
                                                std::to_string(i),
                  {i});
    }
  }
}

inline Mask complement(const BoxSpace& space, std::size_t i, Mask m) { return space.full(i) & ~m; }

inline bool is_proper(const BoxSpace& space, const Box& b) {
  for (std::size_t i = 0; i < b.d(); ++i) {
    if (b[i] == space.full(i)) return false;
  }
  return true;
}

/// i(C): bit i set iff C_i != X_i.
inline std::uint32_t support(const BoxSpace& space, const Box& b) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < b.d(); ++i) {
    if (b[i] != space.full(i)) s |= std::uint32_t{1} << i;
  }
  return s;
}

inline Box full_box(const BoxSpace& space) {
  Box b;
  for (std::size_t i = 0; i < space.d(); ++i) b.factors.push_back(space.full(i));
  return b;
}

inline std::size_t box_cardinality(const Box& b) {
  std::size_t c = 1;
  for (Mask m : b.factors) c *= static_cast<std::size_t>(popcount(m));
  return c;
}

inline bool is_dichotomous(const BoxSpace& space, const Box& a, const Box& b) {
  check_box(space, a);
  check_box(space, b);
  for (std::size_t i = 0; i < space.d(); ++i) {
    if (a[i] == complement(space, i, b[i])) return true;
  }
  return false;
}

/// A and B agree in all coordinates but one, where they are complementary.
inline bool is_twin_pair(const BoxSpace& space, const Box& a, const Box& b) {
  check_box(space, a);
  check_box(space, b);
  int complementary = 0;
  for (std::size_t i = 0; i < space.d(); ++i) {
    if (a[i] == b[i]) continue;
    if (a[i] != complement(space, i, b[i])) return false;
    ++complementary;
  }
  return complementary == 1;
}

/// Bit vector over coordinates; bit i is eps_i.
using Epsilon = std::uint32_t;

inline void check_epsilon(const BoxSpace& space, Epsilon eps) {
  if (space.d() < 32 && (eps >> space.d()) != 0) {
    throw Error(ErrorCode::SpaceMismatch, "epsilon has bits beyond dimension " + std::to_string(space.d()));
  }
}

/// A^eps; absent when a complemented factor is the whole X_i.
inline std::optional<Box> complement_action(const BoxSpace& space, const Box& a, Epsilon eps) {
  check_box(space, a);
  check_epsilon(space, eps);
  Box out = a;
  for (std::size_t i = 0; i < space.d(); ++i) {
    if ((eps >> i) & 1U) {
      out.factors[i] = complement(space, i, a[i]);
      if (out.factors[i] == 0) return std::nullopt;
    }
  }
  return out;
}

/// The simple suit C_C = {C^eps} minus the empty set, ordered by eps
/// restricted to i(C).
inline std::vector<Box> simple_suit(const BoxSpace& space, const Box& c) {
  check_box(space, c);
  const std::uint32_t supp = support(space, c);
  std::vector<Box> out;
  // Iterate over subsets of the support only; other eps give the empty set.
  std::uint32_t eps = 0;
  do {
    out.push_back(*complement_action(space, c, eps));
    eps = (eps - supp) & supp;
  } while (eps != 0);
  return out;
}

/// eps with C^eps = D, when D is in C_C.
inline std::optional<Epsilon> epsilon_between(const BoxSpace& space, const Box& c, const Box& d) {
  Epsilon eps = 0;
  for (std::size_t i = 0; i < space.d(); ++i) {
    if (d[i] == c[i]) continue;
    if (d[i] != complement(space, i, c[i])) return std::nullopt;
    eps |= Epsilon{1} << i;
  }
  return eps;
}

/// Calls f(mask) for every nonempty proper subset of X_i.
template <typename F>
void for_each_proper_subset(const BoxSpace& space, std::size_t i, F&& f) {
  const Mask full = space.full(i);
  for (Mask m = 1; m < full; ++m) f(m);
}

/// Calls f(box) for every proper box of `space`, lexicographically.
template <typename F>
void for_each_proper_box(const BoxSpace& space, F&& f) {
  Box b;
  b.factors.assign(space.d(), 1);
  while (true) {
    f(static_cast<const Box&>(b));
    std::size_t i = space.d();
    while (i-- > 0) {
      if (b.factors[i] + 1 < space.full(i)) {
        ++b.factors[i];
        break;
      }
      b.factors[i] = 1;
      if (i == 0) return;
    }
  }
}

/// Calls f(box) for every nonempty box of `space` (proper or not).
template <typename F>
void for_each_box(const BoxSpace& space, F&& f) {
  Box b;
  b.factors.assign(space.d(), 1);
  while (true) {
    f(static_cast<const Box&>(b));
    std::size_t i = space.d();
    while (i-- > 0) {
      if (b.factors[i] < space.full(i)) {
        ++b.factors[i];
        break;
      }
      b.factors[i] = 1;
      if (i == 0) return;
    }
  }
}

}  // namespace dbox
