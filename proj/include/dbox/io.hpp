#pragma once

// JSON documents.  Every document carries "kind" and "version"; objects keep
// insertion order so serialization is byte-stable.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dbox/canon.hpp"
#include "dbox/genome.hpp"
#include "dbox/suit.hpp"
#include "dbox/tiling.hpp"

namespace dbox::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1";

inline Json envelope(const std::string& kind) {
  Json j;
  j["kind"] = kind;
  j["version"] = kVersion;
  return j;
}

/// Checks kind and (when present) version before any payload is read.
inline void expect_kind(const Json& j, const std::string& kind) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "document is not a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw Error(ErrorCode::ParseError, "document has no kind");
  if (j["kind"].get<std::string>() != kind) {
    throw Error(ErrorCode::ParseError, "expected a " + kind + " document, got " + j["kind"].get<std::string>());
  }
  if (j.contains("version") && j["version"] != kVersion) {
    throw Error(ErrorCode::ParseError, "unsupported document version");
  }
}

inline std::string kind_of(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::ParseError, "document has no kind");
  }
  return j["kind"].get<std::string>();
}

inline const Json& field(const Json& j, const char* name) {
  if (!j.contains(name)) throw Error(ErrorCode::ParseError, std::string("missing field '") + name + "'");
  return j[name];
}

template <typename T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::ParseError, std::string("malformed ") + what);
  }
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

// ---------------------------------------------------------------------------
// Boxes and suits
// ---------------------------------------------------------------------------

inline Json mask_to_json(Mask m) {
  Json a = Json::array();
  for (; m != 0; m &= m - 1) a.push_back(std::countr_zero(m));
  return a;
}

inline Mask mask_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "a factor must be an array of indices");
  Mask m = 0;
  for (const Json& e : j) {
    const int k = get_as<int>(e, "factor element");
    if (k < 0 || k >= kMaxFactorSize) throw Error(ErrorCode::ParseError, "factor element out of range");
    if (m & (Mask{1} << k)) throw Error(ErrorCode::ParseError, "factor element listed twice");
    m |= Mask{1} << k;
  }
  return m;
}

inline Json box_to_json(const Box& b) {
  Json a = Json::array();
  for (Mask m : b.factors) a.push_back(mask_to_json(m));
  return a;
}

inline Box box_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "a box must be an array of factors");
  Box b;
  for (const Json& f : j) b.factors.push_back(mask_from_json(f));
  return b;
}

inline BoxSpace space_from_json(const Json& j) {
  return BoxSpace(get_as<std::vector<int>>(field(j, "dims"), "dims"));
}

/// A suit document before the suit conditions are checked.
struct SuitDocument {
  BoxSpace space;
  std::vector<Box> boxes;
};

inline SuitDocument parse_suit_document(const Json& j) {
  expect_kind(j, "suit");
  SuitDocument doc{space_from_json(j), {}};
  const Json& boxes = field(j, "boxes");
  if (!boxes.is_array()) throw Error(ErrorCode::ParseError, "boxes must be an array");
  for (const Json& b : boxes) doc.boxes.push_back(box_from_json(b));
  return doc;
}

inline Suit suit_from_json(const Json& j, bool require_proper = false) {
  SuitDocument doc = parse_suit_document(j);
  return Suit::verify(std::move(doc.space), std::move(doc.boxes), require_proper);
}

inline Json suit_to_json(const Suit& s) {
  Json j = envelope("suit");
  j["dims"] = s.space().dims();
  Json boxes = Json::array();
  for (const Box& b : s.boxes()) boxes.push_back(box_to_json(b));
  j["boxes"] = std::move(boxes);
  return j;
}

inline Json points_to_json(const PointSet& g) {
  Json j = envelope("points");
  j["dims"] = g.space().dims();
  Json pts = Json::array();
  for (const Point& p : g.members()) pts.push_back(p);
  j["points"] = std::move(pts);
  return j;
}

inline PointSet points_from_json(const Json& j) {
  expect_kind(j, "points");
  PointSet g(space_from_json(j));
  const Json& pts = field(j, "points");
  if (!pts.is_array()) throw Error(ErrorCode::ParseError, "points must be an array");
  for (const Json& p : pts) g.insert(get_as<Point>(p, "point"));
  return g;
}

// ---------------------------------------------------------------------------
// Genomes
// ---------------------------------------------------------------------------

struct GenomeDocument {
  Alphabet alphabet;
  Genome genome;
};

inline Alphabet alphabet_from_json(const Json& pairs) {
  if (!pairs.is_array()) throw Error(ErrorCode::ParseError, "pairs must be an array");
  Alphabet a;
  for (const Json& p : pairs) {
    const auto names = get_as<std::vector<std::string>>(p, "letter pair");
    if (names.size() != 2) throw Error(ErrorCode::ParseError, "a letter pair has two names");
    a.add_pair(names[0], names[1]);
  }
  return a;
}

inline Json alphabet_to_json(const Alphabet& a) {
  Json pairs = Json::array();
  for (const auto& [pos, neg] : a.pairs()) pairs.push_back(Json::array({pos, neg}));
  return pairs;
}

inline Word word_from_json(const Json& j, const Alphabet& a) {
  Word w;
  for (const auto& name : get_as<std::vector<std::string>>(j, "word")) w.push_back(a.find(name));
  return w;
}

inline Json word_to_json(const Word& w, const Alphabet& a) {
  Json j = Json::array();
  for (Letter s : w) j.push_back(a.name(s));
  return j;
}

inline GenomeDocument genome_from_json(const Json& j) {
  expect_kind(j, "genome");
  const auto d = get_as<std::size_t>(field(j, "d"), "d");
  Alphabet a = alphabet_from_json(field(j, "pairs"));
  std::vector<Word> words;
  const Json& ws = field(j, "words");
  if (!ws.is_array()) throw Error(ErrorCode::ParseError, "words must be an array");
  for (const Json& w : ws) words.push_back(word_from_json(w, a));
  Genome g = Genome::verify(d, std::move(words));
  return {std::move(a), std::move(g)};
}

inline Json genome_to_json(const Genome& g, const Alphabet& a) {
  Json j = envelope("genome");
  j["d"] = g.d();
  j["pairs"] = alphabet_to_json(a);
  Json words = Json::array();
  for (const Word& w : g.words()) words.push_back(word_to_json(w, a));
  j["words"] = std::move(words);
  return j;
}

// ---------------------------------------------------------------------------
// Tilings
// ---------------------------------------------------------------------------

inline Json vector_to_json(const TorusVector& v) {
  Json j = Json::array();
  for (const Rational& c : v) j.push_back(to_string(c));
  return j;
}

inline TorusVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "a vector must be an array of rationals");
  TorusVector v;
  for (const Json& c : j) {
    if (c.is_number_integer()) {
      v.emplace_back(c.get<long long>());
    } else {
      v.push_back(parse_rational(get_as<std::string>(c, "rational")));
    }
  }
  return v;
}

inline Json cubes_to_json(const std::vector<TorusVector>& cubes) {
  Json j = Json::array();
  for (const auto& c : cubes) j.push_back(vector_to_json(c));
  return j;
}

inline std::vector<TorusVector> cubes_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "cubes must be an array");
  std::vector<TorusVector> out;
  for (const Json& c : j) out.push_back(vector_from_json(c));
  return out;
}

/// Tiling document with an unchecked cube list (for verification reports).
struct TilingDocument {
  std::size_t d = 0;
  std::vector<TorusVector> cubes;
};

inline TilingDocument parse_tiling_document(const Json& j) {
  expect_kind(j, "tiling");
  return {get_as<std::size_t>(field(j, "d"), "d"), cubes_from_json(field(j, "cubes"))};
}

inline TorusTiling tiling_from_json(const Json& j) {
  TilingDocument doc = parse_tiling_document(j);
  return tiling_verify(doc.d, std::move(doc.cubes));
}

inline Json tiling_to_json(const TorusTiling& t) {
  Json j = envelope("tiling");
  j["d"] = t.d;
  j["cubes"] = cubes_to_json(t.cubes);
  return j;
}

inline Json decomposition_to_json(const ExtremalDecomposition& dec) {
  Json j = envelope("decomposition");
  j["d"] = dec.d;
  j["plus"] = cubes_to_json(dec.plus);
  if (!dec.minus.empty()) j["minus"] = cubes_to_json(dec.minus);
  return j;
}

inline ExtremalDecomposition decomposition_from_json(const Json& j) {
  expect_kind(j, "decomposition");
  const auto d = get_as<std::size_t>(field(j, "d"), "d");
  std::vector<TorusVector> plus = cubes_from_json(field(j, "plus"));
  // The minus half may be omitted when it is to be reconstructed.
  std::vector<TorusVector> minus = j.contains("minus") ? cubes_from_json(j["minus"]) : std::vector<TorusVector>{};
  check_coordinates(d, plus);
  check_coordinates(d, minus);
  return {d, std::move(plus), std::move(minus)};
}

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

inline Json canonical_to_json(const CanonicalForm& c) {
  Json j = envelope("canonical-form");
  j["dims"] = c.space.dims();
  Json terms = Json::array();
  for (const auto& [b, v] : c.coeffs) {
    Json t;
    t["box"] = box_to_json(b);
    t["coeff"] = v;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline CanonicalForm canonical_from_json(const Json& j) {
  expect_kind(j, "canonical-form");
  CanonicalForm c{space_from_json(j), {}};
  for (const Json& t : field(j, "terms")) {
    const Box b = box_from_json(field(t, "box"));
    check_box(c.space, b);
    c.add(b, get_as<long long>(field(t, "coeff"), "coefficient"));
  }
  return c;
}

inline Json word_canonical_to_json(const WordCanonicalForm& c, std::size_t d, const Alphabet& a) {
  Json j = envelope("canonical-form");
  j["d"] = d;
  j["pairs"] = alphabet_to_json(a);
  Json terms = Json::array();
  for (const auto& [w, v] : c.coeffs) {
    Json t;
    t["word"] = word_to_json(w, a);
    t["coeff"] = v;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline WordCanonicalForm word_canonical_from_json(const Json& j) {
  expect_kind(j, "canonical-form");
  const Alphabet a = alphabet_from_json(field(j, "pairs"));
  WordCanonicalForm c;
  for (const Json& t : field(j, "terms")) {
    c.add(word_from_json(field(t, "word"), a), get_as<long long>(field(t, "coeff"), "coefficient"));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Reports and errors
// ---------------------------------------------------------------------------

inline Json report(const std::string& command) {
  Json j = envelope("report");
  j["command"] = command;
  return j;
}

inline Json error_to_json(const std::string& code, const std::string& detail, const std::vector<std::size_t>& where = {}) {
  Json e;
  e["code"] = code;
  e["detail"] = detail;
  if (!where.empty()) e["where"] = where;
  Json j;
  j["error"] = std::move(e);
  return j;
}

inline Json error_to_json(const Error& e) { return error_to_json(std::string(to_string(e.code())), e.detail(), e.where()); }

}  // namespace dbox::io
