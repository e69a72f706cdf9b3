#pragma once

// Additive-function evaluators (phi_C, eta_B), suit indices, binary codes,
// dyadic labellings and the eps-action on suits.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dbox/box.hpp"
#include "dbox/suit.hpp"

namespace dbox {

/// phi_C(A) = prod_i t_i with t_i = 1 on full factors of C, +1 when
/// A_i = C_i, -1 when A_i = X_i \ C_i, and 0 otherwise.
inline int phi(const BoxSpace& space, const Box& c, const Box& a) {
  check_box(space, c);
  check_box(space, a);
  if (!is_proper(space, a)) throw Error(ErrorCode::NotProper, "phi is evaluated on proper boxes only");
  int value = 1;
  for (std::size_t i = 0; i < space.d(); ++i) {
    if (c[i] == space.full(i)) continue;
    if (a[i] == c[i]) continue;
    if (a[i] == complement(space, i, c[i])) {
      value = -value;
      continue;
    }
    return 0;
  }
  return value;
}

/// eta_B(A) = [|A n B| odd]; B must have odd-size factors.
inline int eta(const BoxSpace& space, const Box& b, const Box& a) {
  check_box(space, b);
  check_box(space, a);
  int value = 1;
  for (std::size_t i = 0; i < space.d(); ++i) {
    if (popcount(b[i]) % 2 == 0) {
      throw Error(ErrorCode::EvenFactor, "factor " + std::to_string(i) + " of B has even size", {i});
    }
    value &= popcount(a[i] & b[i]) & 1;
  }
  return value;
}

inline void require_proper_suit(const Suit& s) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!is_proper(s.space(), s.boxes()[k])) {
      throw Error(ErrorCode::NotProper, "box " + std::to_string(k) + " of the suit is not proper", {k});
    }
  }
}

/// Index of a proper suit relative to C: sum of phi_C over its boxes.
inline long long suit_index(const Suit& s, const Box& c) {
  require_proper_suit(s);
  long long total = 0;
  for (const Box& a : s.boxes()) total += phi(s.space(), c, a);
  return total;
}

/// (n+, n-): boxes A whose restriction to I = i(C) lies in the restriction
/// of the even (resp. odd) half of the simple suit of C.
inline std::pair<long long, long long> signed_counts(const Suit& s, const Box& c) {
  const BoxSpace& space = s.space();
  check_box(space, c);
  const std::uint32_t supp = support(space, c);
  long long plus = 0;
  long long minus = 0;
  for (const Box& a : s.boxes()) {
    int flips = 0;
    bool inside = true;
    for (std::size_t i = 0; i < space.d() && inside; ++i) {
      if (((supp >> i) & 1U) == 0) continue;
      if (a[i] == c[i]) continue;
      if (a[i] == complement(space, i, c[i])) {
        ++flips;
      } else {
        inside = false;
      }
    }
    if (!inside) continue;
    (flips % 2 == 0 ? plus : minus) += 1;
  }
  return {plus, minus};
}

/// Calls f(C) for one representative per class C_C: every factor either
/// X_i or a proper subset containing element 0.
template <typename F>
void for_each_index_representative(const BoxSpace& space, F&& f) {
  const std::size_t d = space.d();
  Box c;
  c.factors.assign(d, 1);
  while (true) {
    f(static_cast<const Box&>(c));
    std::size_t i = d;
    while (i-- > 0) {
      // Odd masks in increasing order end at the full mask.
      if (c.factors[i] != space.full(i)) {
        c.factors[i] += 2;
        break;
      }
      c.factors[i] = 1;
      if (i == 0) return;
    }
  }
}

/// Polybox equality through the index criterion.
inline bool polybox_equal_by_index(const Suit& f, const Suit& g, Budget budget = {}) {
  if (!(f.space() == g.space())) throw Error(ErrorCode::SpaceMismatch, "suits live in different spaces");
  require_proper_suit(f);
  require_proper_suit(g);
  const BoxSpace& space = f.space();
  require_budget(space.norm1() - static_cast<int>(space.d()), budget, "index representatives");
  bool equal = true;
  for_each_index_representative(space, [&](const Box& c) {
    if (equal && suit_index(f, c) != suit_index(g, c)) equal = false;
  });
  return equal;
}

// ---------------------------------------------------------------------------
// Equicomplementary families and binary codes
// ---------------------------------------------------------------------------

/// A family of proper subsets of an n-set holding exactly one of every
/// complementary pair.  Stored as a flip bit per pair, indexed by the pair
/// member that contains element 0.
class EquicomplementaryFamily {
 public:
  /// The family of proper subsets containing element 0.
  static EquicomplementaryFamily containing_zero(int n) {
    return EquicomplementaryFamily(n, std::vector<bool>(std::size_t{1} << (n - 1), false));
  }

  template <typename Rng>
  static EquicomplementaryFamily random(int n, Rng& rng) {
    std::vector<bool> flips(std::size_t{1} << (n - 1));
    std::bernoulli_distribution coin(0.5);
    for (std::size_t k = 0; k < flips.size(); ++k) flips[k] = coin(rng);
    return EquicomplementaryFamily(n, std::move(flips));
  }

  int n() const noexcept { return n_; }

  bool contains(Mask s) const {
    const Mask full = (Mask{1} << n_) - 1;
    const bool has_zero = (s & 1U) != 0;
    const Mask rep = has_zero ? s : (full & ~s);
    return has_zero != static_cast<bool>(flips_[rep >> 1]);
  }

  EquicomplementaryFamily complemented() const {
    std::vector<bool> f = flips_;
    f.flip();
    return EquicomplementaryFamily(n_, std::move(f));
  }

 private:
  EquicomplementaryFamily(int n, std::vector<bool> flips) : n_(n), flips_(std::move(flips)) {
    if (n < 2 || n > 20) throw Error(ErrorCode::InvalidArgument, "families are tabulated for 2 <= n <= 20 only");
  }

  int n_;
  std::vector<bool> flips_;
};

/// Checks that `member` picks exactly one of S, X_i \ S for every proper S.
template <typename Pred>
bool is_equicomplementary(int n, Pred&& member) {
  const Mask full = (Mask{1} << n) - 1;
  for (Mask s = 1; s < full; ++s) {
    if (static_cast<bool>(member(s)) == static_cast<bool>(member(full & ~s))) return false;
  }
  return true;
}

/// beta(A) = (beta_1(A_1), ..., beta_d(A_d)), packed with bit i = beta_i.
class BinaryCode {
 public:
  using FactorCode = std::function<bool(Mask)>;

  BinaryCode(BoxSpace space, std::vector<FactorCode> bits) : space_(std::move(space)), bits_(std::move(bits)) {
    if (bits_.size() != space_.d()) throw Error(ErrorCode::SpaceMismatch, "one factor code per coordinate");
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (space_.size(i) <= 20 && !is_equicomplementary(space_.size(i), bits_[i])) {
        throw Error(ErrorCode::InvalidCode,
                    "factor code " + std::to_string(i) + " violates beta(A) + beta(X \\ A) = 1", {i});
      }
    }
  }

  /// Parity of |A_i|; every n_i must be odd.
  static BinaryCode even_odd(const BoxSpace& space) {
    require_odd(space, "even-odd pattern");
    return BinaryCode(space, std::vector<FactorCode>(space.d(), [](Mask m) { return popcount(m) % 2 == 1; }));
  }

  /// [|A_i| > n_i / 2]; every n_i must be odd.
  static BinaryCode more_less(const BoxSpace& space) {
    require_odd(space, "more-less pattern");
    std::vector<FactorCode> bits;
    for (std::size_t i = 0; i < space.d(); ++i) {
      const int n = space.size(i);
      bits.emplace_back([n](Mask m) { return 2 * popcount(m) > n; });
    }
    return BinaryCode(space, std::move(bits));
  }

  const BoxSpace& space() const noexcept { return space_; }

  std::uint32_t operator()(const Box& a) const {
    check_box(space_, a);
    if (!is_proper(space_, a)) throw Error(ErrorCode::NotProper, "binary codes are defined on proper boxes");
    std::uint32_t word = 0;
    for (std::size_t i = 0; i < space_.d(); ++i) {
      if (bits_[i](a[i])) word |= std::uint32_t{1} << i;
    }
    return word;
  }

 private:
  static void require_odd(const BoxSpace& space, const std::string& what) {
    for (std::size_t i = 0; i < space.d(); ++i) {
      if (space.size(i) % 2 == 0) {
        throw Error(ErrorCode::InvalidCode, what + " needs every factor of odd size", {i});
      }
    }
  }

  BoxSpace space_;
  std::vector<FactorCode> bits_;
};

struct CodeProfile {
  std::vector<std::uint32_t> codewords;  // sorted multiset
  std::vector<std::size_t> weights;      // weights[k] = |beta|_k

  bool operator==(const CodeProfile&) const = default;
};

inline CodeProfile binary_code_profile(const Suit& s, const BinaryCode& code) {
  require_proper_suit(s);
  if (!(s.space() == code.space())) throw Error(ErrorCode::SpaceMismatch, "code and suit spaces differ");
  CodeProfile p;
  p.weights.assign(s.space().d() + 1, 0);
  for (const Box& a : s.boxes()) {
    const std::uint32_t w = code(a);
    p.codewords.push_back(w);
    ++p.weights[static_cast<std::size_t>(std::popcount(w))];
  }
  std::sort(p.codewords.begin(), p.codewords.end());
  return p;
}

// ---------------------------------------------------------------------------
// Dyadic labellings
// ---------------------------------------------------------------------------

struct DyadicLabelling {
  BoxSpace space;
  std::size_t label_count = 0;
  std::function<std::size_t(const Box&)> label;
};

inline DyadicLabelling as_labelling(const BinaryCode& code) {
  return {code.space(), std::size_t{1} << code.space().d(), [code](const Box& a) { return std::size_t{code(a)}; }};
}

/// lambda_F for a random proper suit F of 2^d equicomplementary boxes of the
/// box of proper boxes.  The suit is grown as a binary tree: each node splits
/// on an unused coordinate by a fresh random family and its complement.
template <typename Rng>
DyadicLabelling equicomplementary_labelling(const BoxSpace& space, Rng& rng) {
  struct Node {
    std::size_t coord = 0;
    std::shared_ptr<const EquicomplementaryFamily> family;
    std::shared_ptr<const Node> in;
    std::shared_ptr<const Node> out;
    std::size_t leaf = 0;
  };
  std::size_t next_leaf = 0;
  std::function<std::shared_ptr<const Node>(std::vector<std::size_t>)> grow =
      [&](std::vector<std::size_t> coords) -> std::shared_ptr<const Node> {
    auto node = std::make_shared<Node>();
    if (coords.empty()) {
      node->leaf = next_leaf++;
      return node;
    }
    std::uniform_int_distribution<std::size_t> pick(0, coords.size() - 1);
    const std::size_t k = pick(rng);
    node->coord = coords[k];
    coords.erase(coords.begin() + static_cast<std::ptrdiff_t>(k));
    node->family = std::make_shared<EquicomplementaryFamily>(
        EquicomplementaryFamily::random(space.size(node->coord), rng));
    node->in = grow(coords);
    node->out = grow(coords);
    return node;
  };
  std::vector<std::size_t> coords(space.d());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
  std::shared_ptr<const Node> root = grow(coords);

  return {space, std::size_t{1} << space.d(), [root](const Box& a) {
            const Node* n = root.get();
            while (n->family) n = n->family->contains(a[n->coord]) ? n->in.get() : n->out.get();
            return n->leaf;
          }};
}

/// Surjectivity plus the twin-pair exchange identity
/// {l(A), l(B)} = {l(C), l(D)} for twin pairs with A u B = C u D.
///
/// Two twin pairs share a union only when they split the same coordinate i
/// over the same remaining factors, so each class is (i, A restricted to i').
inline bool verify_dyadic(const DyadicLabelling& l, Budget budget = {}) {
  const BoxSpace& space = l.space;
  int bits = 0;
  for (int n : space.dims()) bits += n;  // |proper boxes| < 2^|X|_1
  require_budget(bits, budget, "dyadic labelling check");

  std::vector<bool> seen(l.label_count, false);
  std::map<Box, std::pair<std::size_t, std::size_t>> classes;
  bool ok = true;
  for_each_proper_box(space, [&](const Box& a) {
    const std::size_t la = l.label(a);
    if (la >= l.label_count) {
      ok = false;
      return;
    }
    seen[la] = true;
    for (std::size_t i = 0; i < space.d(); ++i) {
      if ((a[i] & 1U) == 0) continue;  // visit each twin pair once, from its 0-containing member
      Box twin = a;
      twin.factors[i] = complement(space, i, a[i]);
      const std::size_t lb = l.label(twin);
      const auto pair = std::minmax(la, lb);
      Box key = a;
      key.factors[i] = space.full(i);
      auto [it, inserted] = classes.emplace(key, pair);
      if (!inserted && it->second != std::pair<std::size_t, std::size_t>(pair)) ok = false;
    }
  });
  if (!ok) return false;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

/// The suit {A^eps : A in s} of the polybox F^(eps).
inline Suit apply_epsilon(const Suit& s, Epsilon eps) {
  require_proper_suit(s);
  check_epsilon(s.space(), eps);
  std::vector<Box> out;
  out.reserve(s.size());
  for (const Box& a : s.boxes()) out.push_back(*complement_action(s.space(), a, eps));
  return Suit::verify(s.space(), std::move(out), true);
}

}  // namespace dbox
