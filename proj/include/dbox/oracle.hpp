#pragma once

// Deliberately naive references: point enumeration, exhaustive partition
// search, and the selection-space realization of words.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "dbox/box.hpp"
#include "dbox/genome.hpp"
#include "dbox/suit.hpp"

namespace dbox::oracle {

/// Same union, by comparing the point sets member by member.
inline bool points_equal(const Suit& f, const Suit& g, Budget budget = {}) {
  if (!(f.space() == g.space())) throw Error(ErrorCode::SpaceMismatch, "suits live in different spaces");
  require_budget(f.space().norm1(), budget, "point enumeration");
  const PointSet a = union_points(f);
  const PointSet b = union_points(g);
  for (std::size_t k = 0; k < a.universe_size(); ++k) {
    if (a.contains_index(k) != b.contains_index(k)) return false;
  }
  return true;
}

struct MinPartitions {
  std::size_t minimum = 0;
  std::vector<std::vector<Box>> partitions;  // every partition of that size
};

/// All partitions of g into proper boxes of the least possible size.  Each
/// step places a box on the least uncovered point, so every partition is
/// produced exactly once.
inline MinPartitions enumerate_min_partitions(const PointSet& g, Budget budget = {}) {
  const BoxSpace& space = g.space();
  require_budget(static_cast<int>(std::bit_width(space.point_count())), budget, "exhaustive partition search");

  std::vector<Box> proper;
  for_each_proper_box(space, [&](const Box& b) { proper.push_back(b); });
  std::vector<std::vector<std::size_t>> points(proper.size());
  for (std::size_t k = 0; k < proper.size(); ++k) {
    for_each_point_index(space, proper[k], [&](std::size_t idx) { points[k].push_back(idx); });
  }

  MinPartitions out;
  PointSet remaining = g;
  std::vector<Box> chosen;
  std::size_t bound = g.count();  // singletons always work (n_i >= 2)

  std::function<void()> search = [&]() {
    std::size_t first = remaining.universe_size();
    for (std::size_t i = 0; i < remaining.universe_size(); ++i) {
      if (remaining.contains_index(i)) {
        first = i;
        break;
      }
    }
    if (first == remaining.universe_size()) {
      if (chosen.size() < bound) {
        bound = chosen.size();
        out.partitions.clear();
      }
      out.partitions.push_back(chosen);
      return;
    }
    if (chosen.size() + 1 > bound) return;
    for (std::size_t k = 0; k < proper.size(); ++k) {
      const auto& pts = points[k];
      if (std::find(pts.begin(), pts.end(), first) == pts.end()) continue;
      if (!std::all_of(pts.begin(), pts.end(), [&](std::size_t p) { return remaining.contains_index(p); })) continue;
      for (std::size_t p : pts) remaining.erase_index(p);
      chosen.push_back(proper[k]);
      search();
      chosen.pop_back();
      for (std::size_t p : pts) remaining.insert_index(p);
    }
  };
  search();
  out.minimum = bound;
  return out;
}

/// Size of a smallest partition of g into proper boxes.  Singletons are
/// proper whenever every n_i >= 2, so a partition always exists.
inline std::size_t exhaustive_min_partition(const PointSet& g, Budget budget = {}) {
  return enumerate_min_partitions(g, budget).minimum;
}

// ---------------------------------------------------------------------------
// Selection-space realization
// ---------------------------------------------------------------------------

/// E(S) for an alphabet of m letter pairs: the 2^m ways of choosing one
/// letter from each pair.  Selection b picks the negative letter of pair k
/// iff bit k of b is set.  A letter s is realized as the selections that
/// contain it, and a word as the product of its letters' realizations.
class ERealization {
 public:
  explicit ERealization(std::size_t pairs, Budget budget = Budget{16}) : pairs_(pairs) {
    require_budget(static_cast<int>(pairs), budget, "selection space");
  }

  std::size_t pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return std::size_t{1} << pairs_; }

  bool selects(std::size_t selection, Letter s) const {
    return ((selection >> pair_of(s)) & 1U) == static_cast<std::size_t>(s & 1);
  }

  /// Membership mask of the letter over all selections.
  std::vector<bool> letter_set(Letter s) const {
    check_letter(s);
    std::vector<bool> m(size());
    for (std::size_t b = 0; b < size(); ++b) m[b] = selects(b, s);
    return m;
  }

  /// Number of selections containing every listed letter.
  std::size_t intersection_size(const std::vector<Letter>& letters) const {
    for (Letter s : letters) check_letter(s);
    std::size_t c = 0;
    for (std::size_t b = 0; b < size(); ++b) {
      c += std::all_of(letters.begin(), letters.end(), [&](Letter s) { return selects(b, s); }) ? 1 : 0;
    }
    return c;
  }

  /// Per-position membership masks of the realized word.
  std::vector<std::vector<bool>> word_box(const Word& v) const {
    std::vector<std::vector<bool>> out;
    for (Letter s : v) out.push_back(letter_set(s));
    return out;
  }

 private:
  void check_letter(Letter s) const {
    if (s < 0 || static_cast<std::size_t>(pair_of(s)) >= pairs_) {
      throw Error(ErrorCode::InvalidArgument, "letter outside the alphabet");
    }
  }

  std::size_t pairs_;
};

/// Whether the realization of v lies inside the union of the realizations
/// of W in the selection space.  Membership at position i depends only on
/// the pairs occurring there, so each position uses the selection space of
/// those pairs alone; the remaining pairs are free and do not change the
/// answer.
inline bool e_covers(const Word& v, const Genome& w, Budget budget = {}) {
  const std::size_t d = w.d();
  if (v.size() != d) throw Error(ErrorCode::InvalidArgument, "word has the wrong length");
  if (w.size() > 64) throw Error(ErrorCode::BudgetExceeded, "genome has more than 64 words");

  // Local pairs and, per local selection inside v's letter set, the mask of
  // genome words whose letter is also selected.
  std::vector<std::vector<std::uint64_t>> masks(d);
  int bits = 0;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<int> local{pair_of(v[i])};
    for (const Word& x : w.words()) local.push_back(pair_of(x[i]));
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
    bits += static_cast<int>(local.size()) - 1;
    require_budget(bits, budget, "selection-space cover check");

    auto local_letter = [&](Letter s) {
      const auto k = static_cast<Letter>(std::lower_bound(local.begin(), local.end(), pair_of(s)) - local.begin());
      return 2 * k + (s & 1);
    };
    ERealization e(local.size(), budget);
    const Letter vi = local_letter(v[i]);
    for (std::size_t b = 0; b < e.size(); ++b) {
      if (!e.selects(b, vi)) continue;
      std::uint64_t m = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (e.selects(b, local_letter(w.words()[k][i]))) m |= std::uint64_t{1} << k;
      }
      masks[i].push_back(m);
    }
    std::sort(masks[i].begin(), masks[i].end());
    masks[i].erase(std::unique(masks[i].begin(), masks[i].end()), masks[i].end());
  }

  const std::uint64_t all_words = w.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << w.size()) - 1);
  std::function<bool(std::size_t, std::uint64_t)> inside = [&](std::size_t i, std::uint64_t alive) {
    if (alive == 0) return false;
    if (i == d) return true;
    for (std::uint64_t m : masks[i]) {
      if (!inside(i + 1, alive & m)) return false;
    }
    return true;
  };
  return inside(0, all_words);
}

/// One random realization into `space`: every letter pair occurring at
/// position i gets a random proper subset of X_i for its positive letter and
/// the complement for its negative letter.  Distinct pairs receive distinct
/// complementary classes when the factor has room for them.  Returns whether
/// f(v) lies in the union of f(W).
inline bool random_realization_check(const Word& v, const Genome& w, const BoxSpace& space, std::uint64_t seed,
                                     Budget budget = {}) {
  const std::size_t d = w.d();
  if (space.d() != d || v.size() != d) throw Error(ErrorCode::SpaceMismatch, "space and words differ in dimension");
  for (std::size_t i = 0; i < d; ++i) {
    if (space.size(i) < 3) throw Error(ErrorCode::InvalidArgument, "realizations need factors of size at least 3");
  }
  require_budget(space.norm1(), budget, "realization check");

  std::mt19937_64 rng(seed);
  std::vector<std::map<int, Mask>> f(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::set<int> local{pair_of(v[i])};
    for (const Word& x : w.words()) local.insert(pair_of(x[i]));
    const Mask full = space.full(i);
    std::uniform_int_distribution<Mask> pick(1, full - 1);
    std::set<Mask> used;  // class representatives holding element 0
    const std::size_t classes = (full >> 1);  // 2^(n-1) - 1 proper classes
    for (int p : local) {
      Mask m = pick(rng);
      if (used.size() < classes) {
        while (used.count((m & 1U) ? m : (full & ~m))) m = pick(rng);
      }
      used.insert((m & 1U) ? m : (full & ~m));
      f[i][p] = m;
    }
  }
  auto realize = [&](const Word& x) {
    Box b;
    for (std::size_t i = 0; i < d; ++i) {
      const Mask m = f[i].at(pair_of(x[i]));
      b.factors.push_back((x[i] & 1) ? (space.full(i) & ~m) : m);
    }
    return b;
  };

  PointSet covered(space);
  for (const Word& x : w.words()) {
    for_each_point_index(space, realize(x), [&](std::size_t idx) { covered.insert_index(idx); });
  }
  bool inside = true;
  for_each_point_index(space, realize(v), [&](std::size_t idx) { inside = inside && covered.contains_index(idx); });
  return inside;
}

}  // namespace dbox::oracle
