#pragma once

// Cube tilings [0,1)^d + L of the flat torus T^d = R^d / 2Z^d.
//
// Coordinates are exact rationals reduced into [0, 2).  Seen as letters, a
// coordinate c has complement c + 1 (mod 2); the letter pair of c is keyed by
// its fractional part and c is the positive letter iff c < 1.  (The alphabet
// (-1, 1] with |s - s'| = 1 is the same structure shifted.)

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dbox/genome.hpp"
#include "dbox/numeric.hpp"

namespace dbox {

using TorusVector = std::vector<Rational>;

struct TorusTiling {
  std::size_t d = 0;
  std::vector<TorusVector> cubes;

  bool operator==(const TorusTiling&) const = default;
};

inline Rational reduce_mod2(const Rational& r) { return mod_floor(r, BigInt(2)); }

inline TorusVector reduce_mod2(TorusVector v) {
  for (Rational& c : v) c = reduce_mod2(c);
  return v;
}

/// Difference of two reduced coordinates, in (-2, 2).
inline bool unit_offset(const Rational& a, const Rational& b) {
  const Rational diff = a - b;
  return diff == 1 || diff == -1;
}

inline bool integral_offset(const Rational& a, const Rational& b) {
  const Rational diff = a - b;
  return diff == 0 || diff == 1 || diff == -1;
}

/// Some coordinate differs by exactly 1 modulo 2.
inline bool cubes_dichotomous(const TorusVector& a, const TorusVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (unit_offset(a[i], b[i])) return true;
  }
  return false;
}

inline bool integral_partners(const TorusVector& a, const TorusVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!integral_offset(a[i], b[i])) return false;
  }
  return true;
}

inline void check_coordinates(std::size_t d, const std::vector<TorusVector>& cubes) {
  for (std::size_t k = 0; k < cubes.size(); ++k) {
    if (cubes[k].size() != d) {
      throw Error(ErrorCode::InvalidArgument, "cube " + std::to_string(k) + " has the wrong dimension", {k});
    }
    for (const Rational& c : cubes[k]) {
      if (c < 0 || c >= 2) {
        throw Error(ErrorCode::CoordOutOfRange, "cube " + std::to_string(k) + " has a coordinate outside [0, 2)",
                    {k});
      }
    }
  }
}

/// Validates a tiling: 2^d cubes, pairwise dichotomous.
inline TorusTiling tiling_verify(std::size_t d, std::vector<TorusVector> cubes) {
  if (d == 0 || d > 30) throw Error(ErrorCode::InvalidArgument, "dimension must lie in [1, 30]");
  check_coordinates(d, cubes);
  if (cubes.size() != (std::size_t{1} << d)) {
    throw Error(ErrorCode::WrongCount,
                "a tiling of T^" + std::to_string(d) + " has " + std::to_string(std::size_t{1} << d) +
                    " cubes, got " + std::to_string(cubes.size()));
  }
  for (std::size_t a = 0; a < cubes.size(); ++a) {
    for (std::size_t b = a + 1; b < cubes.size(); ++b) {
      if (!cubes_dichotomous(cubes[a], cubes[b])) {
        throw Error(ErrorCode::NotDichotomous,
                    "cubes " + std::to_string(a) + " and " + std::to_string(b) + " overlap", {a, b});
      }
    }
  }
  return {d, std::move(cubes)};
}

/// Maps coordinates to letters and back for one family of cubes.
class LetterTable {
 public:
  Letter letter(const Rational& c) {
    const Rational frac = mod_floor(c, BigInt(1));
    auto [it, inserted] = pairs_.emplace(frac, static_cast<int>(fractions_.size()));
    if (inserted) fractions_.push_back(frac);
    return 2 * it->second + (c >= 1 ? 1 : 0);
  }

  Rational coordinate(Letter s) const {
    const Rational& frac = fractions_.at(static_cast<std::size_t>(pair_of(s)));
    return (s & 1) ? frac + 1 : frac;
  }

  Word word(const TorusVector& v) {
    Word w;
    for (const Rational& c : v) w.push_back(letter(c));
    return w;
  }

  TorusVector vector(const Word& w) const {
    TorusVector v;
    for (Letter s : w) v.push_back(coordinate(s));
    return v;
  }

 private:
  std::map<Rational, int> pairs_;
  std::vector<Rational> fractions_;
};

/// The word set of a family of cubes.
inline Genome coordinate_genome(std::size_t d, const std::vector<TorusVector>& cubes, LetterTable& table) {
  std::vector<Word> words;
  for (const auto& c : cubes) words.push_back(table.word(c));
  return Genome::verify(d, std::move(words));
}

struct ExtremalPairing {
  bool two_extremal = false;
  std::vector<std::size_t> partner_counts;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // filled when two_extremal
};

inline ExtremalPairing is_two_extremal(const TorusTiling& t) {
  const std::size_t n = t.cubes.size();
  ExtremalPairing r;
  r.partner_counts.assign(n, 0);
  std::vector<std::size_t> partner(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (integral_partners(t.cubes[a], t.cubes[b])) {
        ++r.partner_counts[a];
        ++r.partner_counts[b];
        partner[a] = b;
        partner[b] = a;
      }
    }
  }
  r.two_extremal = std::all_of(r.partner_counts.begin(), r.partner_counts.end(), [](std::size_t c) { return c == 1; });
  if (r.two_extremal) {
    for (std::size_t a = 0; a < n; ++a) {
      if (a < partner[a]) r.pairs.emplace_back(a, partner[a]);
    }
  }
  return r;
}

struct Selector {
  enum class Kind { Lex, Seeded };
  Kind kind = Kind::Lex;
  bool swap = false;        // exchange the roles of the two halves
  std::uint64_t seed = 0;   // for Kind::Seeded
};

struct ExtremalDecomposition {
  std::size_t d = 0;
  std::vector<TorusVector> plus;   // sorted
  std::vector<TorusVector> minus;  // sorted

  bool operator==(const ExtremalDecomposition&) const = default;
};

/// Splits every integral-offset pair of a 2-extremal tiling between the
/// halves.  Lex puts the lexicographically smaller cube of each pair in plus.
inline ExtremalDecomposition decompose(const TorusTiling& t, const Selector& sel) {
  const ExtremalPairing pairing = is_two_extremal(t);
  if (!pairing.two_extremal) throw Error(ErrorCode::NotTwoExtremal, "the tiling is not 2-extremal");
  std::mt19937_64 rng(sel.seed);
  std::bernoulli_distribution coin(0.5);
  ExtremalDecomposition out{t.d, {}, {}};
  for (const auto& [a, b] : pairing.pairs) {
    const TorusVector& lo = std::min(t.cubes[a], t.cubes[b]);
    const TorusVector& hi = std::max(t.cubes[a], t.cubes[b]);
    bool lo_plus = sel.kind == Selector::Kind::Lex ? true : coin(rng);
    if (sel.swap) lo_plus = !lo_plus;
    out.plus.push_back(lo_plus ? lo : hi);
    out.minus.push_back(lo_plus ? hi : lo);
  }
  std::sort(out.plus.begin(), out.plus.end());
  std::sort(out.minus.begin(), out.minus.end());
  return out;
}

/// The minus half determined by a plus half.
inline std::vector<TorusVector> reconstruct(std::size_t d, const std::vector<TorusVector>& plus, Budget budget = {}) {
  if (d == 0 || d > 30) throw Error(ErrorCode::InvalidArgument, "dimension must lie in [1, 30]");
  check_coordinates(d, plus);
  LetterTable table;
  const Genome g = coordinate_genome(d, plus, table);
  const Genome minus = reconstruct_minus(g, default_universe(g), std::size_t{1} << d, budget);
  std::vector<TorusVector> out;
  for (const Word& w : minus.words()) out.push_back(table.vector(w));
  std::sort(out.begin(), out.end());
  return out;
}

inline bool cubes_overlap(const TorusVector& a, const TorusVector& b) { return !cubes_dichotomous(a, b); }

struct ChessboardResult {
  bool premise = false;   // I_z misses every plus cube
  bool in_minus = false;  // z is (mod 2) a minus translate
  std::optional<std::size_t> overlap_witness;  // index into plus
};

/// If the cube at z misses every plus cube, z must be a minus translate;
/// a violation throws TheoremViolation.
inline ChessboardResult chessboard_check(const TorusTiling& t, const ExtremalDecomposition& dec, TorusVector z) {
  if (z.size() != t.d) throw Error(ErrorCode::InvalidArgument, "z has the wrong dimension");
  std::vector<TorusVector> halves = dec.plus;
  halves.insert(halves.end(), dec.minus.begin(), dec.minus.end());
  std::vector<TorusVector> cubes = t.cubes;
  std::sort(halves.begin(), halves.end());
  std::sort(cubes.begin(), cubes.end());
  if (dec.d != t.d || halves != cubes) {
    throw Error(ErrorCode::InvalidArgument, "the decomposition does not split this tiling");
  }
  z = reduce_mod2(std::move(z));

  ChessboardResult r;
  for (std::size_t k = 0; k < dec.plus.size(); ++k) {
    if (cubes_overlap(z, dec.plus[k])) {
      r.overlap_witness = k;
      break;
    }
  }
  r.in_minus = std::find(dec.minus.begin(), dec.minus.end(), z) != dec.minus.end();
  r.premise = !r.overlap_witness.has_value();
  if (r.premise && !r.in_minus) {
    throw Error(ErrorCode::TheoremViolation, "a cube disjoint from every plus cube is not a minus cube");
  }
  return r;
}

namespace detail {

template <typename Rng>
Rational random_fraction(Rng& rng, int max_den = 12) {
  std::uniform_int_distribution<int> den(2, max_den);
  const int q = den(rng);
  std::uniform_int_distribution<int> num(1, q - 1);
  return Rational(num(rng), q);
}

/// Two layers of independent (d-1)-dimensional constructions; the second
/// layer is shifted until no cube has an integral-offset partner across
/// layers.  Coordinates are not reduced.
template <typename Rng>
std::vector<TorusVector> layered(std::size_t d, Rng& rng) {
  if (d == 1) return {TorusVector{Rational(0)}, TorusVector{Rational(1)}};
  const std::vector<TorusVector> lower = layered(d - 1, rng);
  std::vector<TorusVector> upper = layered(d - 1, rng);
  while (true) {
    TorusVector shift;
    for (std::size_t i = 0; i + 1 < d; ++i) shift.push_back(random_fraction(rng));
    std::vector<TorusVector> moved = upper;
    for (auto& v : moved) {
      for (std::size_t i = 0; i + 1 < d; ++i) v[i] = reduce_mod2(v[i] + shift[i]);
    }
    bool clash = false;
    for (const auto& a : lower) {
      for (const auto& b : moved) {
        bool integral = true;
        for (std::size_t i = 0; i + 1 < d && integral; ++i) integral = is_integer(a[i] - b[i]);
        clash = clash || integral;
      }
    }
    if (clash) continue;
    std::vector<TorusVector> out;
    for (auto v : lower) {
      v.push_back(Rational(0));
      out.push_back(std::move(v));
    }
    for (auto v : moved) {
      v.push_back(Rational(1));
      out.push_back(std::move(v));
    }
    return out;
  }
}

}  // namespace detail

/// Deterministic-by-seed 2-extremal tiling from the layered construction,
/// followed by a random coordinate permutation and translation.
inline TorusTiling generate_two_extremal(std::size_t d, std::uint64_t seed, Budget budget = {}) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  require_budget(static_cast<int>(2 * d), budget, "tiling generation");
  std::mt19937_64 rng(seed);
  std::vector<TorusVector> cubes = detail::layered(d, rng);

  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  TorusVector offset;
  std::uniform_int_distribution<int> whole(0, 1);
  for (std::size_t i = 0; i < d; ++i) offset.push_back(Rational(whole(rng)) + detail::random_fraction(rng));

  for (auto& v : cubes) {
    TorusVector p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = reduce_mod2(v[perm[i]] + offset[i]);
    v = std::move(p);
  }
  TorusTiling t = tiling_verify(d, std::move(cubes));
  if (!is_two_extremal(t).two_extremal) {
    throw Error(ErrorCode::TheoremViolation, "generator produced a tiling that is not 2-extremal");
  }
  return t;
}

}  // namespace dbox
