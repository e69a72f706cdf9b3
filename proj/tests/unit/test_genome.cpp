#include <gtest/gtest.h>

#include "dbox/genome.hpp"
#include "dbox/oracle.hpp"
#include "generators.hpp"

using namespace dbox;

namespace {

// Letters a = 0, b = 2, c = 4 with complements 1, 3, 5.
constexpr Letter a = 0, a_ = 1, b = 2, b_ = 3, c = 4;

WordCanonicalForm wform(std::initializer_list<std::pair<Word, long long>> terms) {
  WordCanonicalForm f;
  for (const auto& [w, v] : terms) f.add(w, v);
  return f;
}

Genome genome(std::size_t d, std::vector<Word> words) { return Genome::verify(d, std::move(words)); }

}  // namespace

TEST(Alphabet, NamesAndLookup) {
  Alphabet alpha;
  EXPECT_EQ(alpha.add_pair("a", "a'"), 0);
  EXPECT_EQ(alpha.add_pair("b", "B"), 2);
  EXPECT_EQ(alpha.find("a'"), 1);
  EXPECT_EQ(alpha.find("*"), kStar);
  EXPECT_EQ(alpha.name(3), "B");
  EXPECT_THROW(alpha.find("z"), Error);
  EXPECT_THROW(alpha.add_pair("a", "x"), Error);
  EXPECT_THROW(alpha.add_pair("q", "q"), Error);
  EXPECT_THROW(alpha.add_pair("*", "q"), Error);
}

TEST(Genome, VerifyRejectsBadWords) {
  EXPECT_EQ(genome(1, {}).size(), 0U);
  try {
    genome(2, {{a, b}, {a, c}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDichotomous);
  }
  EXPECT_THROW(genome(2, {{a}}), Error);
  EXPECT_THROW(genome(1, {{kStar}}), Error);
}

TEST(WordExpand, Examples) {
  EXPECT_EQ(word_expand({a, b}), wform({{{a, b}, 1}}));
  EXPECT_EQ(word_expand({a_, b}), wform({{{kStar, b}, 1}, {{a, b}, -1}}));
  EXPECT_EQ(word_expand({a_, b_}), wform({{{kStar, kStar}, 1}, {{kStar, b}, -1}, {{a, kStar}, -1}, {{a, b}, 1}}));
}

TEST(GenomeCanonical, Examples) {
  EXPECT_EQ(genome_canonical(genome(1, {{a}, {a_}})), wform({{{kStar}, 1}}));
  EXPECT_EQ(genome_canonical(genome(1, {{b}, {b_}})), wform({{{kStar}, 1}}));
  fuzz::Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pools = fuzz::random_pools(3, rng, 2, 4);
    const Genome g = fuzz::random_genome(3, pools, rng, 8);
    EXPECT_LE(genome_canonical(g).coeffs.size(), g.size() * 8);
    for (const auto& [m, v] : genome_canonical(g).coeffs) {
      for (Letter s : m) EXPECT_TRUE(s == kStar || is_positive(s));
    }
  }
}

TEST(WordIndex, Examples) {
  const Genome w = genome(2, {{a, b}, {a_, b}, {c, b_}});
  EXPECT_EQ(word_index(w, {kStar, kStar}), 3);
  EXPECT_EQ(word_phi({a, b}, {a, b}), 1);
  EXPECT_EQ(word_index(genome(1, {{a}, {a_}}), {a}), 0);
}

TEST(Covers, Examples) {
  const Genome w = genome(2, {{a, b}, {a_, b}, {c, b_}});
  EXPECT_TRUE(covers({a, b}, w).covered);
  const auto r = covers({a}, genome(1, {{b}, {b_}}));
  EXPECT_TRUE(r.covered);
  EXPECT_EQ(r.sum, 2);
  const auto miss = covers({a}, genome(1, {{a_}}));
  EXPECT_FALSE(miss.covered);
  EXPECT_EQ(miss.sum, 0);
  EXPECT_EQ(miss.gap, 2);
}

TEST(Covers, BoundAndRealizationAgreement) {
  fuzz::Rng rng(2);
  for (int trial = 0; trial < 2000; ++trial) {
    std::uniform_int_distribution<std::size_t> dd(1, 3);
    const std::size_t d = dd(rng);
    const auto pools = fuzz::random_pools(d, rng, 2, 4);
    const Genome w = fuzz::random_genome(d, pools, rng, std::size_t{1} << d);
    const Word v = fuzz::random_word(d, pools, rng);
    const CoverResult r = covers(v, w);  // throws if the sum exceeds 2^d
    EXPECT_LE(r.sum, 1LL << d);
    EXPECT_EQ(r.covered, oracle::e_covers(v, w));
    if (r.covered) {
      const BoxSpace x(std::vector<int>(d, 4));
      for (std::uint64_t seed = 0; seed < 3; ++seed) EXPECT_TRUE(oracle::random_realization_check(v, w, x, seed));
    }
  }
}

TEST(Covers, FullGenomesCoverEveryWord) {
  fuzz::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> dd(1, 3);
    const std::size_t d = dd(rng);
    const auto pools = fuzz::random_pools(d, rng, 3, 5);
    const Genome w = genome(d, fuzz::random_full_genome(d, pools, rng));
    for (int k = 0; k < 20; ++k) EXPECT_TRUE(covers(fuzz::random_word(d, pools, rng), w).covered);
  }
}

TEST(GenomesEquivalent, Examples) {
  const Genome v = genome(2, {{a, b}, {a_, b}});
  EXPECT_TRUE(genomes_equivalent(v, v).equal());
  const auto r = genomes_equivalent(genome(1, {{a}, {a_}}), genome(1, {{b}, {b_}}));
  EXPECT_TRUE(r.canon && r.index && r.cover);
  const auto r2 = genomes_equivalent(v, genome(2, {{a, b}, {a_, b_}}));
  EXPECT_FALSE(r2.canon || r2.index || r2.cover);
}

TEST(GenomesEquivalent, RoutesAgreeOnFuzzedPairs) {
  fuzz::Rng rng(4);
  int equal = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<std::size_t> dd(1, 3);
    const std::size_t d = dd(rng);
    const auto pools = fuzz::random_pools(d, rng, 2, 4);
    const auto [v, w] = fuzz::random_genome_pair(d, pools, rng, std::size_t{1} << d);
    const EquivalenceReport r = genomes_equivalent(v, w);  // throws on disagreement
    equal += r.equal() ? 1 : 0;
  }
  EXPECT_GT(equal, 100);
  EXPECT_LT(equal, 900);
}

TEST(RigidityWitness, Examples) {
  EXPECT_EQ(rigidity_witness(genome(1, {{a}, {a_}}), {b}), (Word{a}));
  const Genome w = genome(2, {{a, b}, {a_, b}, {c, b_}, {c + 1, b_}});
  const Word u = rigidity_witness(w, {c, b});
  EXPECT_TRUE(w.contains(u));
  EXPECT_THROW(rigidity_witness(w, {a, b}), Error);
  EXPECT_THROW(rigidity_witness(genome(1, {{a}}), {b}), Error);
}

TEST(RigidityWitness, ExistsForEveryCoveredOutsideWord) {
  fuzz::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> dd(1, 3);
    const std::size_t d = dd(rng);
    const auto pools = fuzz::random_pools(d, rng, 2, 4);
    const Genome w = fuzz::random_genome(d, pools, rng, std::size_t{1} << d);
    const Word v = fuzz::random_word(d, pools, rng);
    if (w.contains(v) || !covers(v, w).covered) continue;
    const Word u = rigidity_witness(w, v);
    const long long idx = word_index(w, u);
    EXPECT_LT(static_cast<std::size_t>(idx < 0 ? -idx : idx), class_count(w, u));
  }
}

TEST(InducedDecomposition, Examples) {
  const Genome w = genome(1, {{a}, {a_}});
  const auto dec = induced_decomposition(w, orientation_from({{a}}));
  EXPECT_EQ(dec.plus.words(), (std::vector<Word>{{a}}));
  EXPECT_EQ(dec.minus.words(), (std::vector<Word>{{a_}}));
  EXPECT_THROW(orientation_from({{a}, {a_}}), Error);
  EXPECT_THROW(induced_decomposition(w, Orientation{}), Error);

  // No two words share a class: every word can be made positive.
  const Genome lone = genome(2, {{a, b}, {a_, c}});
  EXPECT_EQ(induced_decomposition(lone, orientation_from(lone.words())).plus.size(), 2U);
}

TEST(ReconstructMinus, Examples) {
  const Genome plus = genome(1, {{a}});
  EXPECT_EQ(reconstruct_minus(plus, default_universe(plus), 2).words(), (std::vector<Word>{{a_}}));
  const Genome full = genome(2, {{a, b}, {a_, b}, {c, b_}, {c + 1, b_}});
  EXPECT_EQ(reconstruct_minus(full, default_universe(full), 4).size(), 0U);
  EXPECT_THROW(reconstruct_minus(plus, default_universe(plus), 3), Error);
}

TEST(ReconstructMinus, ErrorsForTooSmallUniverseOrNonUniqueCompletion) {
  // Universe without the needed letter: nothing is found.
  const Genome plus = genome(1, {{a}});
  try {
    reconstruct_minus(plus, {{a}}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Incomplete);
  }
  // W+ = {ab} is not the plus half of any induced decomposition: with a
  // second pair at position 0, five words are dichotomous to it.
  const Genome lone = genome(2, {{a, b}});
  try {
    reconstruct_minus(lone, {{a, a_, c, c + 1}, {b, b_}}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnique);
  }
}

TEST(Rigidity, InducedPlusHalfDeterminesTheGenome) {
  // For a genome of size 2^d with an induced decomposition, the words
  // dichotomous to all of W+ are exactly W-.
  fuzz::Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> dd(1, 3);
    const std::size_t d = dd(rng);
    const auto pools = fuzz::random_pools(d, rng, 2, 3);
    const Genome w = genome(d, fuzz::random_full_genome(d, pools, rng));
    // Orientation: a random sign per class.
    Orientation o;
    std::bernoulli_distribution coin(0.5);
    for (const Word& x : w.words()) o.emplace(class_key(x), coin(rng) ? 1 : -1);
    const auto dec = induced_decomposition(w, o);
    std::vector<Word> minus = dec.minus.words();
    std::sort(minus.begin(), minus.end());
    EXPECT_EQ(reconstruct_minus(dec.plus, default_universe(dec.plus), std::size_t{1} << d).words(), minus);
  }
}

TEST(Rigidity, EquivalentGenomeContainingThePlusHalfIsEqual) {
  fuzz::Rng rng(7);
  int containing = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::uniform_int_distribution<std::size_t> dd(1, 3);
    const std::size_t d = dd(rng);
    const auto pools = fuzz::random_pools(d, rng, 2, 3);
    const auto [w, v] = fuzz::random_genome_pair(d, pools, rng, std::size_t{1} << d);
    if (!genomes_equivalent(w, v).equal()) continue;
    Orientation o;
    std::bernoulli_distribution coin(0.5);
    for (const Word& x : w.words()) o.emplace(class_key(x), coin(rng) ? 1 : -1);
    const auto dec = induced_decomposition(w, o);
    const bool plus_inside =
        std::all_of(dec.plus.words().begin(), dec.plus.words().end(), [&](const Word& x) { return v.contains(x); });
    if (!plus_inside) continue;
    ++containing;
    std::vector<Word> sw = w.words();
    std::vector<Word> sv = v.words();
    std::sort(sw.begin(), sw.end());
    std::sort(sv.begin(), sv.end());
    EXPECT_EQ(sw, sv);
  }
  EXPECT_GT(containing, 50);
}
