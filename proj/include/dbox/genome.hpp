#pragma once

// Words over a complemented alphabet and polybox genomes.
//
// Letters are small integers: pair k owns the positive letter 2k and the
// negative letter 2k+1, so complementation is `s ^ 1`.  The positive letter
// of each pair is the one listed first.  kStar is the extra symbol '*'.

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbox/error.hpp"

namespace dbox {

using Letter = int;
inline constexpr Letter kStar = -1;

constexpr Letter prime(Letter s) noexcept { return s ^ 1; }
constexpr bool is_positive(Letter s) noexcept { return s >= 0 && (s & 1) == 0; }
constexpr Letter positive_of(Letter s) noexcept { return s & ~1; }
constexpr int pair_of(Letter s) noexcept { return s >> 1; }

using Word = std::vector<Letter>;

class Alphabet {
 public:
  /// Registers the pair (positive, negative) and returns the positive letter.
  Letter add_pair(const std::string& positive, const std::string& negative) {
    for (const std::string* name : {&positive, &negative}) {
      if (name->empty() || *name == "*") {
        throw Error(ErrorCode::InvalidArgument, "letter name '" + *name + "' is reserved or empty");
      }
      if (index_.count(*name)) throw Error(ErrorCode::InvalidArgument, "letter '" + *name + "' listed twice");
    }
    if (positive == negative) throw Error(ErrorCode::InvalidArgument, "a letter cannot be its own complement");
    const Letter s = static_cast<Letter>(2 * pairs_.size());
    pairs_.emplace_back(positive, negative);
    index_[positive] = s;
    index_[negative] = prime(s);
    return s;
  }

  Letter find(const std::string& name) const {
    if (name == "*") return kStar;
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorCode::ParseError, "unknown letter '" + name + "'");
    return it->second;
  }

  std::string name(Letter s) const {
    if (s == kStar) return "*";
    const auto& p = pairs_.at(static_cast<std::size_t>(pair_of(s)));
    return (s & 1) ? p.second : p.first;
  }

  std::size_t pair_count() const noexcept { return pairs_.size(); }
  const std::vector<std::pair<std::string, std::string>>& pairs() const noexcept { return pairs_; }

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::map<std::string, Letter> index_;
};

inline bool words_dichotomous(const Word& v, const Word& w) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == prime(w[i])) return true;
  }
  return false;
}

/// A set of pairwise dichotomous words of common length d (possibly empty).
class Genome {
 public:
  static Genome verify(std::size_t d, std::vector<Word> words) {
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "words have length at least 1");
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (words[k].size() != d) {
        throw Error(ErrorCode::InvalidArgument, "word " + std::to_string(k) + " has the wrong length", {k});
      }
      for (Letter s : words[k]) {
        if (s < 0) throw Error(ErrorCode::InvalidArgument, "genome words cannot contain '*'", {k});
      }
    }
    for (std::size_t a = 0; a < words.size(); ++a) {
      for (std::size_t b = a + 1; b < words.size(); ++b) {
        if (!words_dichotomous(words[a], words[b])) {
          throw Error(ErrorCode::NotDichotomous,
                      "words " + std::to_string(a) + " and " + std::to_string(b) + " are not dichotomous", {a, b});
        }
      }
    }
    return Genome(d, std::move(words));
  }

  std::size_t d() const noexcept { return d_; }
  const std::vector<Word>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }

  bool contains(const Word& w) const { return std::find(words_.begin(), words_.end(), w) != words_.end(); }

 private:
  Genome(std::size_t d, std::vector<Word> words) : d_(d), words_(std::move(words)) {}

  std::size_t d_;
  std::vector<Word> words_;
};

/// Element of the free module over monomials in (*S+)^d.
struct WordCanonicalForm {
  std::map<Word, long long> coeffs;  // nonzero entries only

  bool operator==(const WordCanonicalForm&) const = default;

  void add(const Word& monomial, long long value) {
    long long& c = coeffs[monomial];
    if (__builtin_add_overflow(c, value, &c)) {
      throw Error(ErrorCode::BudgetExceeded, "canonical-form coefficient overflow");
    }
    if (c == 0) coeffs.erase(monomial);
  }
};

/// v_+: every negative letter s' becomes (* - s).
inline WordCanonicalForm word_expand(const Word& v) {
  WordCanonicalForm out;
  std::uint32_t negatives = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) throw Error(ErrorCode::InvalidArgument, "cannot expand a word containing '*'");
    if (!is_positive(v[i])) negatives |= std::uint32_t{1} << i;
  }
  std::uint32_t pick = 0;  // coordinates taking the -s term
  do {
    Word term = v;
    long long sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (((negatives >> i) & 1U) == 0) continue;
      if ((pick >> i) & 1U) {
        term[i] = positive_of(v[i]);
        sign = -sign;
      } else {
        term[i] = kStar;
      }
    }
    out.add(term, sign);
    pick = (pick - negatives) & negatives;
  } while (pick != 0);
  return out;
}

inline WordCanonicalForm genome_canonical(const Genome& w) {
  WordCanonicalForm out;
  for (const Word& v : w.words()) {
    for (const auto& [m, c] : word_expand(v).coeffs) out.add(m, c);
  }
  return out;
}

/// phi_u(w) = prod_i ([u_i = w_i] - [u_i = w_i'] + [u_i = *]).
inline int word_phi(const Word& u, const Word& w) {
  int value = 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == kStar || u[i] == w[i]) continue;
    if (u[i] == prime(w[i])) {
      value = -value;
      continue;
    }
    return 0;
  }
  return value;
}

inline long long word_index(const Genome& w, const Word& u) {
  if (u.size() != w.d()) throw Error(ErrorCode::InvalidArgument, "query word has the wrong length");
  long long total = 0;
  for (const Word& x : w.words()) total += word_phi(u, x);
  return total;
}

/// g(v, w) = prod_i (2[v_i = w_i] + [v_i not in {w_i, w_i'}]).
inline long long g_value(const Word& v, const Word& w) {
  long long value = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == w[i]) {
      value *= 2;
    } else if (v[i] == prime(w[i])) {
      return 0;
    }
  }
  return value;
}

struct CoverResult {
  bool covered = false;
  long long sum = 0;  // sum of g(v, w) over the genome
  long long gap = 0;  // 2^d - sum
};

inline CoverResult covers(const Word& v, const Genome& w) {
  if (v.size() != w.d()) throw Error(ErrorCode::InvalidArgument, "word has the wrong length");
  for (Letter s : v) {
    if (s < 0) throw Error(ErrorCode::InvalidArgument, "covered words cannot contain '*'");
  }
  const long long cap = 1LL << w.d();
  CoverResult r;
  for (const Word& x : w.words()) r.sum += g_value(v, x);
  if (r.sum > cap) {
    throw Error(ErrorCode::GSumExceeds2d, "sum of g(v, w) is " + std::to_string(r.sum) + " > 2^d");
  }
  r.gap = cap - r.sum;
  r.covered = r.gap == 0;
  return r;
}

/// |C_u n W|: members of W agreeing with u up to complementation everywhere.
inline std::size_t class_count(const Genome& w, const Word& u) {
  std::size_t c = 0;
  for (const Word& x : w.words()) {
    bool same = true;
    for (std::size_t i = 0; i < u.size() && same; ++i) same = positive_of(x[i]) == positive_of(u[i]);
    c += same ? 1 : 0;
  }
  return c;
}

struct EquivalenceReport {
  bool canon = false;
  bool index = false;
  bool cover = false;

  bool equal() const noexcept { return canon; }
};

/// Letters to try at each position when comparing word indices: '*' and
/// the positive letter of every pair seen at that position in V u W.
inline std::vector<std::vector<Letter>> index_alphabet(const Genome& v, const Genome& w) {
  std::vector<std::vector<Letter>> letters(v.d(), std::vector<Letter>{kStar});
  for (const Genome* g : {&v, &w}) {
    for (const Word& x : g->words()) {
      for (std::size_t i = 0; i < x.size(); ++i) letters[i].push_back(positive_of(x[i]));
    }
  }
  for (auto& l : letters) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return letters;
}

/// Calls f(word) for every word in the product of the per-position lists.
template <typename F>
void for_each_word(const std::vector<std::vector<Letter>>& letters, F&& f) {
  const std::size_t d = letters.size();
  for (const auto& l : letters) {
    if (l.empty()) return;
  }
  std::vector<std::size_t> at(d, 0);
  Word u(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) u[i] = letters[i][at[i]];
    f(static_cast<const Word&>(u));
    std::size_t i = d;
    while (i-- > 0) {
      if (++at[i] < letters[i].size()) break;
      at[i] = 0;
      if (i == 0) return;
    }
  }
}

inline int product_bits(const std::vector<std::vector<Letter>>& letters) {
  double bits = 0;
  for (const auto& l : letters) bits += std::log2(static_cast<double>(std::max<std::size_t>(l.size(), 1)));
  return static_cast<int>(std::ceil(bits));
}

inline bool equal_by_word_index(const Genome& v, const Genome& w, Budget budget = {}) {
  const auto letters = index_alphabet(v, w);
  require_budget(product_bits(letters), budget, "word-index comparison");
  bool equal = true;
  for_each_word(letters, [&](const Word& u) {
    if (equal && word_index(v, u) != word_index(w, u)) equal = false;
  });
  return equal;
}

inline bool covers_genome(const Genome& covering, const Genome& covered) {
  for (const Word& x : covered.words()) {
    if (!covers(x, covering).covered) return false;
  }
  return true;
}

/// Genome equivalence by canonical forms, by word indices and by mutual
/// cover with equal sizes.  The three must agree.
inline EquivalenceReport genomes_equivalent(const Genome& v, const Genome& w, Budget budget = {}) {
  if (v.d() != w.d()) throw Error(ErrorCode::InvalidArgument, "genomes have different word lengths");
  EquivalenceReport r;
  r.canon = genome_canonical(v) == genome_canonical(w);
  r.index = equal_by_word_index(v, w, budget);
  r.cover = v.size() == w.size() && covers_genome(w, v) && covers_genome(v, w);
  if (r.canon != r.index || r.canon != r.cover) {
    throw Error(ErrorCode::CriteriaDisagree, std::string("canon=") + (r.canon ? "1" : "0") +
                                                 " index=" + (r.index ? "1" : "0") + " cover=" +
                                                 (r.cover ? "1" : "0"));
  }
  return r;
}

/// A member u of W with |index(W, u)| < |C_u n W|, for v covered by W and
/// not in W.
inline Word rigidity_witness(const Genome& w, const Word& v) {
  if (w.contains(v)) throw Error(ErrorCode::InvalidArgument, "the word already belongs to the genome");
  if (!covers(v, w).covered) throw Error(ErrorCode::InvalidArgument, "the word is not covered by the genome");
  for (const Word& u : w.words()) {
    const long long idx = word_index(w, u);
    if (static_cast<std::size_t>(idx < 0 ? -idx : idx) < class_count(w, u)) return u;
  }
  throw Error(ErrorCode::NoWitness, "no member has index smaller than its class count");
}

// ---------------------------------------------------------------------------
// Induced decompositions and reconstruction
// ---------------------------------------------------------------------------

/// The positive representative of C_w.
inline Word class_key(const Word& w) {
  Word k = w;
  for (Letter& s : k) s = positive_of(s);
  return k;
}

inline int parity_sign(const Word& w) {
  int sign = 1;
  for (Letter s : w) {
    if (!is_positive(s)) sign = -sign;
  }
  return sign;
}

/// Sign assigned to the class key of each C_w; a word w of the class lands in
/// W+ iff orientation[key] * (-1)^(number of negative letters of w) = +1.
using Orientation = std::map<Word, int>;

/// Orientation under which every listed word is positive.
inline Orientation orientation_from(const std::vector<Word>& positives) {
  Orientation o;
  for (const Word& w : positives) {
    const int sign = parity_sign(w);
    auto [it, inserted] = o.emplace(class_key(w), sign);
    if (!inserted && it->second != sign) {
      throw Error(ErrorCode::InconsistentOrientation, "two positive words of one class carry opposite signs");
    }
  }
  return o;
}

struct GenomeDecomposition {
  Genome plus;
  Genome minus;
};

inline GenomeDecomposition induced_decomposition(const Genome& w, const Orientation& orientation) {
  std::vector<Word> plus;
  std::vector<Word> minus;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Word& x = w.words()[k];
    auto it = orientation.find(class_key(x));
    if (it == orientation.end() || (it->second != 1 && it->second != -1)) {
      throw Error(ErrorCode::InconsistentOrientation, "no sign for the class of word " + std::to_string(k), {k});
    }
    (it->second * parity_sign(x) == 1 ? plus : minus).push_back(x);
  }
  return {Genome::verify(w.d(), std::move(plus)), Genome::verify(w.d(), std::move(minus))};
}

/// Per position: the letters of `plus` at that position and their complements.
inline std::vector<std::vector<Letter>> default_universe(const Genome& plus) {
  std::vector<std::vector<Letter>> u(plus.d());
  for (const Word& x : plus.words()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      u[i].push_back(x[i]);
      u[i].push_back(prime(x[i]));
    }
  }
  for (auto& l : u) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return u;
}

/// Every letter of the alphabet at every position.
inline std::vector<std::vector<Letter>> alphabet_universe(const Alphabet& a, std::size_t d) {
  std::vector<Letter> all;
  for (std::size_t k = 0; k < a.pair_count(); ++k) {
    all.push_back(static_cast<Letter>(2 * k));
    all.push_back(static_cast<Letter>(2 * k + 1));
  }
  return std::vector<std::vector<Letter>>(d, all);
}

/// Recovers W- from W+ for a genome of size 2^d: W- is exactly the set of
/// words dichotomous to every member of W+.  The search runs over the
/// per-position `universe`; finding more words than 2^d - |W+| contradicts
/// rigidity (NotUnique), finding fewer means the universe is too small
/// (Incomplete).
inline Genome reconstruct_minus(const Genome& plus, const std::vector<std::vector<Letter>>& universe,
                                std::size_t expected_size, Budget budget = {}) {
  const std::size_t d = plus.d();
  if (d >= 63 || expected_size != (std::size_t{1} << d)) {
    throw Error(ErrorCode::InvalidArgument, "reconstruction is supported for genomes of size 2^d only");
  }
  if (universe.size() != d) throw Error(ErrorCode::InvalidArgument, "universe needs one letter list per position");
  if (plus.size() > expected_size) throw Error(ErrorCode::InvalidArgument, "W+ is larger than the genome");
  if (plus.size() > 64) throw Error(ErrorCode::BudgetExceeded, "W+ has more than 64 words");
  require_budget(product_bits(universe), budget, "reconstruction search");

  const std::size_t need = expected_size - plus.size();
  const std::uint64_t all = plus.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << plus.size()) - 1);

  // hits[i][k]: members of W+ made dichotomous by letter universe[i][k].
  std::vector<std::vector<std::uint64_t>> hits(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (Letter s : universe[i]) {
      std::uint64_t m = 0;
      for (std::size_t k = 0; k < plus.size(); ++k) {
        if (plus.words()[k][i] == prime(s)) m |= std::uint64_t{1} << k;
      }
      hits[i].push_back(m);
    }
  }

  std::vector<Word> found;
  Word v(d);
  std::function<void(std::size_t, std::uint64_t)> search = [&](std::size_t i, std::uint64_t covered) {
    if (i == d) {
      if (covered == all) found.push_back(v);
      return;
    }
    for (std::size_t k = 0; k < universe[i].size(); ++k) {
      v[i] = universe[i][k];
      search(i + 1, covered | hits[i][k]);
      if (found.size() > need) return;
    }
  };
  search(0, 0);

  if (found.size() > need) {
    throw Error(ErrorCode::NotUnique, "more than 2^d - |W+| words are dichotomous to all of W+");
  }
  if (found.size() < need) {
    throw Error(ErrorCode::Incomplete, "found " + std::to_string(found.size()) + " of " + std::to_string(need) +
                                           " words; the letter universe is too small");
  }
  std::sort(found.begin(), found.end());
  return Genome::verify(d, std::move(found));
}

}  // namespace dbox
