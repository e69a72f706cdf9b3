#include <gtest/gtest.h>

#include <map>
#include <set>

#include "dbox/index.hpp"
#include "dbox/oracle.hpp"
#include "generators.hpp"

using namespace dbox;

namespace {

Suit suit_for_x(const BoxSpace& x, fuzz::Rng& rng) { return Suit::verify(x, fuzz::random_suit_for_x(x, rng), true); }

long long eta_sum(const Suit& s, const Box& b) {
  long long total = 0;
  for (const Box& a : s.boxes()) total += eta(s.space(), b, a);
  return total;
}

}  // namespace

TEST(Phi, Examples) {
  const BoxSpace x{3, 3};
  const Box c = Box::of({{0}, {1}});
  EXPECT_EQ(phi(x, c, c), 1);
  EXPECT_EQ(phi(x, c, *complement_action(x, c, 0b01)), -1);
  EXPECT_EQ(phi(x, c, *complement_action(x, c, 0b11)), 1);
  EXPECT_EQ(phi(x, Box::of({{0}, {0, 1, 2}}), Box::of({{0}, {1}})), 1);
  EXPECT_EQ(phi(x, c, Box::of({{0, 1}, {1}})), 0);
  EXPECT_THROW(phi(x, c, Box::of({{0, 1, 2}, {1}})), Error);
}

TEST(Eta, Examples) {
  EXPECT_EQ(eta(BoxSpace{3}, Box::of({{0}}), Box::of({{0}})), 1);
  EXPECT_EQ(eta(BoxSpace{3}, Box::of({{0, 1, 2}}), Box::of({{1, 2}})), 0);
  EXPECT_EQ(eta(BoxSpace{3, 3}, Box::of({{0}, {0, 1, 2}}), Box::of({{0, 1}, {1, 2}})), 0);
  try {
    eta(BoxSpace{3}, Box::of({{0, 1}}), Box::of({{0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EvenFactor);
  }
}

TEST(SuitIndex, Examples) {
  fuzz::Rng rng(1);
  const BoxSpace x{3, 3};
  const Suit s = suit_for_x(x, rng);
  EXPECT_EQ(suit_index(s, Box::of({{0}, {1}})), 0);
  EXPECT_EQ(suit_index(s, full_box(x)), 4);
  EXPECT_EQ(suit_index(Suit::verify(x, {Box::of({{0}, {1}})}), Box::of({{0}, {1}})), 1);
  EXPECT_THROW(suit_index(Suit::verify(x, {Box::of({{0, 1, 2}, {1}})}), full_box(x)), Error);
}

TEST(SuitIndex, VanishesForSuitsOfXAndMatchesSignedCounts) {
  fuzz::Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const BoxSpace x = fuzz::random_space(rng, 3, {2, 3, 4});
    const Suit s = suit_for_x(x, rng);
    const Suit part = fuzz::random_proper_suit(x, rng, std::size_t{1} << x.d());
    for_each_box(x, [&](const Box& c) {
      if (c == full_box(x)) {
        EXPECT_EQ(suit_index(s, c), static_cast<long long>(s.size()));
        return;
      }
      EXPECT_EQ(suit_index(s, c), 0);
      const auto [plus, minus] = signed_counts(part, c);
      EXPECT_EQ(suit_index(part, c), plus - minus);
    });
  }
}

TEST(SuitIndex, PhiFunctionsAreOrthogonalAcrossClasses) {
  // Over all proper boxes, phi_C and phi_D are orthogonal unless D lies in
  // the simple suit of C, where phi_D = +-phi_C.
  const BoxSpace x{3, 3};
  std::vector<Box> proper;
  for_each_proper_box(x, [&](const Box& a) { proper.push_back(a); });
  for (const Box& c : proper) {
    for (const Box& d : proper) {
      long long dot = 0;
      for (const Box& a : proper) dot += phi(x, c, a) * phi(x, d, a);
      if (auto e = epsilon_between(x, c, d)) {
        EXPECT_EQ(dot, (std::popcount(*e) % 2 == 0 ? 1 : -1) * 4);
      } else {
        EXPECT_EQ(dot, 0);
      }
      long long over_simple = 0;
      for (const Box& a : simple_suit(x, d)) over_simple += phi(x, c, a);
      EXPECT_EQ(over_simple, 0);
    }
  }
}

TEST(PolyboxEqualByIndex, Examples) {
  fuzz::Rng rng(3);
  const BoxSpace x{3, 3};
  const Suit f = Suit::verify(x, {Box::of({{0}, {1}})});
  EXPECT_TRUE(polybox_equal_by_index(f, f));
  EXPECT_TRUE(polybox_equal_by_index(suit_for_x(x, rng), Suit::verify(x, simple_suit(x, Box::of({{1}, {0, 2}})))));
  EXPECT_FALSE(polybox_equal_by_index(f, Suit::verify(x, {Box::of({{0}, {2}})})));
}

TEST(PolyboxEqualByIndex, AgreesWithPointOracle) {
  fuzz::Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const BoxSpace x = fuzz::random_space(rng, 3, {2, 3, 4});
    const auto [f, g] = fuzz::random_suit_pair(x, rng, std::size_t{1} << x.d());
    EXPECT_EQ(polybox_equal_by_index(f, g), oracle::points_equal(f, g));
  }
}

TEST(SuitInvariance, IndexCodesAndEtaSums) {
  fuzz::Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const BoxSpace x = fuzz::random_space(rng, 3, {3, 5});
    const Suit f = fuzz::random_proper_suit(x, rng, std::size_t{1} << x.d());
    const Suit g = fuzz::equivalent_suit(f, rng);
    ASSERT_TRUE(oracle::points_equal(f, g));
    for_each_index_representative(x, [&](const Box& c) { EXPECT_EQ(suit_index(f, c), suit_index(g, c)); });
    for (const auto& code : {BinaryCode::even_odd(x), BinaryCode::more_less(x)}) {
      EXPECT_EQ(binary_code_profile(f, code), binary_code_profile(g, code));
    }
    for_each_box(x, [&](const Box& b) {
      for (std::size_t i = 0; i < x.d(); ++i) {
        if (popcount(b[i]) % 2 == 0) return;
      }
      EXPECT_EQ(eta_sum(f, b), eta_sum(g, b));
    });
  }
}

TEST(BinaryCode, Examples) {
  fuzz::Rng rng(6);
  const BoxSpace x{3, 3};
  const auto eo = BinaryCode::even_odd(x);
  EXPECT_EQ(binary_code_profile(suit_for_x(x, rng), eo).weights, (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(eo(Box::of({{0}, {1, 2}})), 0b01U);
  EXPECT_EQ(BinaryCode::more_less(x)(Box::of({{0, 1}, {2}})), 0b01U);
  EXPECT_THROW(BinaryCode::even_odd(BoxSpace{3, 4}), Error);
  EXPECT_THROW(BinaryCode::more_less(BoxSpace{4}), Error);
  try {
    BinaryCode(BoxSpace{3}, {[](Mask) { return true; }});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidCode);
  }
}

TEST(DyadicLabelling, CodesAndEquicomplementarySuitsAreDyadic) {
  fuzz::Rng rng(7);
  EXPECT_TRUE(verify_dyadic(as_labelling(BinaryCode::even_odd(BoxSpace{3, 3}))));
  EXPECT_TRUE(verify_dyadic(as_labelling(BinaryCode::more_less(BoxSpace{3, 5}))));
  for (const BoxSpace& x : {BoxSpace{3, 3}, BoxSpace{4, 3}, BoxSpace{2, 3, 4}}) {
    for (int k = 0; k < 5; ++k) EXPECT_TRUE(verify_dyadic(equicomplementary_labelling(x, rng)));
  }
}

TEST(DyadicLabelling, NegativeCases) {
  const BoxSpace x{3, 3};
  EXPECT_FALSE(verify_dyadic({x, 2, [](const Box&) { return std::size_t{0}; }}));
  // Surjective but breaks the exchange identity: label by whether factor 0 is {0}.
  EXPECT_FALSE(verify_dyadic({x, 2, [](const Box& a) { return std::size_t{a[0] == 1 ? 1U : 0U}; }}));
}

TEST(Equicomplementary, Families) {
  fuzz::Rng rng(8);
  const auto zero = EquicomplementaryFamily::containing_zero(4);
  EXPECT_TRUE(is_equicomplementary(4, [&](Mask m) { return zero.contains(m); }));
  EXPECT_TRUE(zero.contains(0b0001));
  EXPECT_FALSE(zero.contains(0b1110));
  const auto r = EquicomplementaryFamily::random(5, rng);
  EXPECT_TRUE(is_equicomplementary(5, [&](Mask m) { return r.contains(m); }));
  const auto c = r.complemented();
  for (Mask m = 1; m < 31; ++m) EXPECT_NE(r.contains(m), c.contains(m));
}

TEST(ApplyEpsilon, Examples) {
  fuzz::Rng rng(9);
  const BoxSpace x1{3};
  const Suit s = Suit::verify(x1, {Box::of({{0}}), Box::of({{1, 2}})});
  EXPECT_EQ(apply_epsilon(s, 0).boxes(), s.boxes());
  EXPECT_EQ(apply_epsilon(s, 1).boxes(), (std::vector<Box>{Box::of({{1, 2}}), Box::of({{0}})}));
  for (int trial = 0; trial < 50; ++trial) {
    const BoxSpace x = fuzz::random_space(rng, 3, {2, 3, 4});
    const Suit f = fuzz::random_proper_suit(x, rng, 8);
    std::uniform_int_distribution<Epsilon> eps(0, (Epsilon{1} << x.d()) - 1);
    const Epsilon e = eps(rng);
    EXPECT_EQ(union_points(apply_epsilon(apply_epsilon(f, e), e)), union_points(f));
  }
}

TEST(IndexParity, SymmetricPolyboxes) {
  fuzz::Rng rng(10);
  int built = 0;
  for (int trial = 0; trial < 400 && built < 100; ++trial) {
    const BoxSpace x = fuzz::random_space(rng, 3, {2, 3, 4});
    const Suit s = fuzz::random_proper_suit(x, rng, std::size_t{1} << (x.d() - 1));
    std::uniform_int_distribution<Epsilon> eps_dist(1, (Epsilon{1} << x.d()) - 1);
    const Epsilon eps = eps_dist(rng);
    std::set<Box> boxes(s.boxes().begin(), s.boxes().end());
    const Suit mirrored = apply_epsilon(s, eps);
    boxes.insert(mirrored.boxes().begin(), mirrored.boxes().end());
    Suit f = s;
    try {
      f = Suit::verify(x, {boxes.begin(), boxes.end()}, true);
    } catch (const Error&) {
      continue;
    }
    ++built;
    ASSERT_EQ(union_points(apply_epsilon(f, eps)), union_points(f));
    for_each_box(x, [&](const Box& b) {
      if (b == full_box(x)) return;
      const long long idx = suit_index(f, b);
      EXPECT_EQ(idx % 2, 0);
      if (std::popcount(support(x, b) & eps) % 2 == 1) {
        EXPECT_EQ(idx, 0);
      }
    });
  }
  EXPECT_GE(built, 50);
}

TEST(IndexParity, OddIndexRepresentatives) {
  // For each support I (|I| >= 2) whose (|I|-1)-subsupports carry even
  // indices, the odd-index representatives with support I number 0 or at
  // least 2^|I|, exist only when |I| < d, and come with a partner differing
  // up to complement on every coordinate of I.
  fuzz::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const BoxSpace x = fuzz::random_space(rng, 3, {3, 4});
    const Suit f = fuzz::random_proper_suit(x, rng, std::size_t{1} << x.d());
    std::map<std::uint32_t, std::vector<Box>> odd_by_support;
    std::map<std::uint32_t, bool> has_odd;
    for_each_index_representative(x, [&](const Box& c) {
      const std::uint32_t supp = support(x, c);
      if (suit_index(f, c) % 2 != 0) {
        odd_by_support[supp].push_back(c);
        has_odd[supp] = true;
      }
    });
    const std::uint32_t all = (std::uint32_t{1} << x.d()) - 1;
    for (std::uint32_t supp = 1; supp <= all; ++supp) {
      const int n = std::popcount(supp);
      if (n < 2) continue;
      bool hypothesis = true;
      for (std::size_t i = 0; i < x.d(); ++i) {
        if ((supp >> i) & 1U) hypothesis = hypothesis && !has_odd[supp & ~(std::uint32_t{1} << i)];
      }
      if (!hypothesis) continue;
      const auto& e = odd_by_support[supp];
      if (e.empty()) continue;
      EXPECT_GE(e.size(), std::size_t{1} << n);
      EXPECT_LT(static_cast<std::size_t>(n), x.d());
      for (const Box& c : e) {
        bool partner = false;
        for (const Box& dd : e) {
          bool differs = true;
          for (std::size_t i = 0; i < x.d() && differs; ++i) {
            if ((supp >> i) & 1U) differs = dd[i] != c[i] && dd[i] != complement(x, i, c[i]);
          }
          partner = partner || differs;
        }
        EXPECT_TRUE(partner);
      }
    }
  }
}

TEST(SignedCount, MaximalSupportBox) {
  fuzz::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const BoxSpace x = fuzz::random_space(rng, 3, {2, 3, 4});
    const auto boxes = fuzz::random_suit_for_x(x, rng, 0.3);
    const Suit f = Suit::verify(x, boxes);
    int k = 0;
    for (const Box& b : boxes) k = std::max(k, std::popcount(support(x, b)));
    for (const Box& c : boxes) {
      if (std::popcount(support(x, c)) != k) continue;
      long long signed_sum = 0;
      for (const Box& dd : f.boxes()) {
        if (auto e = epsilon_between(x, c, dd)) signed_sum += std::popcount(*e) % 2 == 0 ? 1 : -1;
      }
      EXPECT_EQ(signed_sum, 0);
    }
  }
}
