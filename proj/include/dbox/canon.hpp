#pragma once

// Projection of the free module over boxes onto the span of the canonical
// basis B, where B_i = {proper subsets of X_i containing 0} u {X_i}.  Two
// suits define the same polybox iff their projections coincide.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dbox/box.hpp"
#include "dbox/suit.hpp"

namespace dbox {

struct CanonicalForm {
  BoxSpace space;
  std::map<Box, long long> coeffs;  // nonzero entries only

  bool operator==(const CanonicalForm&) const = default;

  /// Adds `value` to the coefficient of `basis_box`, dropping zeros.
  void add(const Box& basis_box, long long value) {
    long long& c = coeffs[basis_box];
    if (__builtin_add_overflow(c, value, &c)) {
      throw Error(ErrorCode::BudgetExceeded, "canonical-form coefficient overflow");
    }
    if (c == 0) coeffs.erase(basis_box);
  }

  CanonicalForm& operator+=(const CanonicalForm& other) {
    for (const auto& [b, v] : other.coeffs) add(b, v);
    return *this;
  }
};

inline bool in_canonical_basis(const BoxSpace& space, std::size_t i, Mask m) {
  return (m & 1U) != 0 || m == space.full(i);
}

/// P(A) = P_1(A_1) x ... x P_d(A_d) with P_i(A_i) = A_i when A_i is a basis
/// element and X_i - (X_i \ A_i) otherwise, expanded into <= 2^d terms.
inline CanonicalForm project_box(const BoxSpace& space, const Box& a) {
  check_box(space, a);
  CanonicalForm out{space, {}};
  const std::size_t d = space.d();
  std::uint32_t split = 0;  // coordinates where A_i is not a basis element
  for (std::size_t i = 0; i < d; ++i) {
    if (!in_canonical_basis(space, i, a[i])) split |= std::uint32_t{1} << i;
  }
  // Each subset `pick` of `split` chooses the -(X_i \ A_i) term at those
  // coordinates and the X_i term at the rest of `split`.
  std::uint32_t pick = 0;
  do {
    Box term = a;
    long long sign = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (((split >> i) & 1U) == 0) continue;
      if ((pick >> i) & 1U) {
        term.factors[i] = complement(space, i, a[i]);
        sign = -sign;
      } else {
        term.factors[i] = space.full(i);
      }
    }
    out.add(term, sign);
    pick = (pick - split) & split;
  } while (pick != 0);
  return out;
}

/// Sum of project_box over the members of a (possibly improper) suit.
inline CanonicalForm canonical_form(const Suit& s) {
  CanonicalForm out{s.space(), {}};
  for (const Box& a : s.boxes()) out += project_box(s.space(), a);
  return out;
}

inline bool suits_equivalent(const Suit& f, const Suit& g) {
  if (!(f.space() == g.space())) throw Error(ErrorCode::SpaceMismatch, "suits live in different spaces");
  return canonical_form(f) == canonical_form(g);
}

}  // namespace dbox
