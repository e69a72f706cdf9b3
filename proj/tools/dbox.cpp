// Command-line front end: every subcommand reads JSON documents (a file path
// or "-" for standard input) and writes one JSON document per result to
// standard output.
//
// Exit codes: 0 success, 1 domain-negative answer, 2 input or domain error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "dbox/dbox.hpp"
#include "dbox/io.hpp"

using namespace dbox;
using io::Json;

namespace {

struct Globals {
  int budget = 24;
  std::uint64_t seed = 0;
  std::string format = "json";
};

Globals globals;

Budget budget() { return Budget{globals.budget}; }

void emit(const Json& j) {
  std::cout << (globals.format == "pretty" ? j.dump(2) : j.dump()) << '\n';
}

Json read_json(const std::string& path) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return io::parse_text(text);
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_text(buf.str());
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

// Letter pairs of a second genome document folded into an existing alphabet.
void merge_pairs(Alphabet& a, const Json& pairs) {
  const Alphabet b = io::alphabet_from_json(pairs);
  for (const auto& [pos, neg] : b.pairs()) {
    bool known_pos = true;
    bool known_neg = true;
    Letter p = 0;
    Letter n = 0;
    try {
      p = a.find(pos);
    } catch (const Error&) {
      known_pos = false;
    }
    try {
      n = a.find(neg);
    } catch (const Error&) {
      known_neg = false;
    }
    if (!known_pos && !known_neg) {
      a.add_pair(pos, neg);
    } else if (!(known_pos && known_neg && n == prime(p))) {
      throw Error(ErrorCode::ParseError, "letters '" + pos + "' and '" + neg + "' are paired differently");
    }
  }
}

Genome genome_over(const Json& j, const Alphabet& a) {
  io::expect_kind(j, "genome");
  const auto d = io::get_as<std::size_t>(io::field(j, "d"), "d");
  std::vector<Word> words;
  for (const Json& w : io::field(j, "words")) words.push_back(io::word_from_json(w, a));
  return Genome::verify(d, std::move(words));
}

Json verdict(const std::string& command, const std::map<std::string, bool>& methods, int& exit_code) {
  bool first = methods.begin()->second;
  for (const auto& [name, value] : methods) {
    if (value != first) {
      std::string detail;
      for (const auto& [n, v] : methods) detail += n + "=" + (v ? "1 " : "0 ");
      detail.pop_back();
      throw Error(ErrorCode::CriteriaDisagree, detail);
    }
  }
  Json j = io::report(command);
  j["equal"] = first;
  Json m = Json::object();
  for (const auto& [name, value] : methods) m[name] = value;
  j["methods"] = std::move(m);
  exit_code = first ? 0 : 1;
  return j;
}

Selector make_selector(const std::string& select, bool swap) {
  if (select == "lex") return {Selector::Kind::Lex, swap, 0};
  return {Selector::Kind::Seeded, swap, globals.seed};
}

TorusVector parse_vector(const std::string& text) {
  TorusVector v;
  for (const auto& part : split(text, ',')) v.push_back(parse_rational(part));
  return v;
}

std::string codeword_string(std::uint32_t w, std::size_t d) {
  std::string s;
  for (std::size_t i = 0; i < d; ++i) s += ((w >> i) & 1U) ? '1' : '0';
  return s;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int verify_suit(const std::string& path, bool proper) {
  const Suit s = io::suit_from_json(read_json(path), proper);
  Json j = io::report("verify-suit");
  j["valid"] = true;
  j["dims"] = s.space().dims();
  j["size"] = s.size();
  j["proper"] = s.proper();
  emit(j);
  return 0;
}

int boxnum(const std::string& path) {
  const Json doc = read_json(path);
  const bool from_suit = io::kind_of(doc) == "suit";
  const PointSet g = from_suit ? union_points(io::suit_from_json(doc)) : io::points_from_json(doc);
  const Rational bn = box_number(g, budget());
  Json j = io::report("boxnum");
  j["box_number"] = to_string(bn);
  j["points"] = g.count();
  j["polybox"] = from_suit || is_polybox(g, budget());
  emit(j);
  return 0;
}

int canon(const std::string& path) {
  emit(io::canonical_to_json(canonical_form(io::suit_from_json(read_json(path)))));
  return 0;
}

int equiv(const std::string& a, const std::string& b, const std::string& method) {
  const Suit f = io::suit_from_json(read_json(a));
  const Suit g = io::suit_from_json(read_json(b));
  std::map<std::string, bool> methods;
  if (method == "canon" || method == "all") methods["canon"] = suits_equivalent(f, g);
  if (method == "index" || method == "all") methods["index"] = polybox_equal_by_index(f, g, budget());
  if (method == "oracle" || method == "all") methods["oracle"] = oracle::points_equal(f, g, budget());
  int code = 0;
  emit(verdict("equiv", methods, code));
  return code;
}

int index_cmd(const std::string& suit_path, const std::string& box_text) {
  const Suit s = io::suit_from_json(read_json(suit_path));
  const Box c = io::box_from_json(io::parse_text(box_text));
  check_box(s.space(), c);
  const auto [plus, minus] = signed_counts(s, c);
  Json j = io::report("index");
  j["box"] = io::box_to_json(c);
  j["index"] = suit_index(s, c);
  j["plus"] = plus;
  j["minus"] = minus;
  emit(j);
  return 0;
}

int codes(const std::string& path, const std::string& pattern) {
  const Suit s = io::suit_from_json(read_json(path), true);
  const BinaryCode code = pattern == "eo" ? BinaryCode::even_odd(s.space()) : BinaryCode::more_less(s.space());
  const CodeProfile p = binary_code_profile(s, code);
  Json j = io::report("codes");
  j["pattern"] = pattern;
  Json words = Json::array();
  for (std::uint32_t w : p.codewords) words.push_back(codeword_string(w, s.space().d()));
  j["codewords"] = std::move(words);
  j["weights"] = p.weights;
  emit(j);
  return 0;
}

int genome_canon(const std::string& path) {
  const io::GenomeDocument doc = io::genome_from_json(read_json(path));
  emit(io::word_canonical_to_json(genome_canonical(doc.genome), doc.genome.d(), doc.alphabet));
  return 0;
}

int genome_equiv(const std::string& a, const std::string& b, const std::string& method) {
  const Json ja = read_json(a);
  const Json jb = read_json(b);
  io::expect_kind(ja, "genome");
  io::expect_kind(jb, "genome");
  Alphabet alphabet = io::alphabet_from_json(io::field(ja, "pairs"));
  merge_pairs(alphabet, io::field(jb, "pairs"));
  const Genome v = genome_over(ja, alphabet);
  const Genome w = genome_over(jb, alphabet);
  if (v.d() != w.d()) throw Error(ErrorCode::InvalidArgument, "genomes have different word lengths");
  std::map<std::string, bool> methods;
  if (method == "all") {
    const EquivalenceReport r = genomes_equivalent(v, w, budget());
    methods = {{"canon", r.canon}, {"index", r.index}, {"cover", r.cover}};
  } else if (method == "canon") {
    methods["canon"] = genome_canonical(v) == genome_canonical(w);
  } else if (method == "index") {
    methods["index"] = equal_by_word_index(v, w, budget());
  } else {
    methods["cover"] = v.size() == w.size() && covers_genome(w, v) && covers_genome(v, w);
  }
  int code = 0;
  emit(verdict("genome-equiv", methods, code));
  return code;
}

int cover(const std::string& word_text, const std::string& path) {
  const io::GenomeDocument doc = io::genome_from_json(read_json(path));
  Word v;
  for (const auto& name : split(word_text, ',')) v.push_back(doc.alphabet.find(name));
  const CoverResult r = covers(v, doc.genome);
  Json j = io::report("cover");
  j["word"] = io::word_to_json(v, doc.alphabet);
  j["covered"] = r.covered;
  j["member"] = doc.genome.contains(v);
  j["g_sum"] = r.sum;
  j["gap"] = r.gap;
  emit(j);
  return r.covered ? 0 : 1;
}

int rigidity(const std::string& path, const std::string& universe) {
  const io::GenomeDocument doc = io::genome_from_json(read_json(path));
  const std::size_t d = doc.genome.d();
  if (d >= 63) throw Error(ErrorCode::InvalidArgument, "word length too large");
  const auto letters = universe == "alphabet" ? alphabet_universe(doc.alphabet, d) : default_universe(doc.genome);
  const Genome minus = reconstruct_minus(doc.genome, letters, std::size_t{1} << d, budget());
  emit(io::genome_to_json(minus, doc.alphabet));
  return 0;
}

int tiling_verify_cmd(const std::string& path) {
  const TorusTiling t = io::tiling_from_json(read_json(path));
  Json j = io::report("tiling-verify");
  j["valid"] = true;
  j["d"] = t.d;
  j["cubes"] = t.cubes.size();
  emit(j);
  return 0;
}

int tiling_extremal(const std::string& path) {
  const ExtremalPairing r = is_two_extremal(io::tiling_from_json(read_json(path)));
  Json j = io::report("tiling-extremal");
  j["two_extremal"] = r.two_extremal;
  j["partner_counts"] = r.partner_counts;
  Json pairs = Json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back(Json::array({a, b}));
  j["pairs"] = std::move(pairs);
  emit(j);
  return r.two_extremal ? 0 : 1;
}

int tiling_decompose(const std::string& path, const std::string& select, bool swap) {
  emit(io::decomposition_to_json(decompose(io::tiling_from_json(read_json(path)), make_selector(select, swap))));
  return 0;
}

int tiling_reconstruct(const std::string& path) {
  const ExtremalDecomposition given = io::decomposition_from_json(read_json(path));
  ExtremalDecomposition out{given.d, given.plus, reconstruct(given.d, given.plus, budget())};
  std::sort(out.plus.begin(), out.plus.end());
  emit(io::decomposition_to_json(out));
  // A supplied minus half that disagrees with the reconstruction.
  std::vector<TorusVector> supplied = given.minus;
  for (auto& z : supplied) z = reduce_mod2(std::move(z));
  std::sort(supplied.begin(), supplied.end());
  return supplied.empty() || supplied == out.minus ? 0 : 1;
}

// One line per tiling; with `check`, a summary of the rigidity and
// chess-board checks instead.
int tiling_gen(std::size_t d, std::size_t count, bool check) {
  std::size_t roundtrips = 0;
  std::size_t chessboard = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t seed = globals.seed + k;
    const TorusTiling t = generate_two_extremal(d, seed, budget());
    if (!check) {
      emit(io::tiling_to_json(t));
      continue;
    }
    bool ok = true;
    for (bool swap : {false, true}) {
      const ExtremalDecomposition dec = decompose(t, {Selector::Kind::Seeded, swap, seed});
      ok = ok && reconstruct(d, dec.plus, budget()) == dec.minus;
    }
    roundtrips += ok ? 1 : 0;
    const ExtremalDecomposition dec = decompose(t, {});
    bool board = true;
    for (const auto& z : dec.minus) board = board && chessboard_check(t, dec, z).in_minus;
    chessboard += board ? 1 : 0;
  }
  if (!check) return 0;
  Json j = io::report("tiling-gen");
  j["d"] = d;
  j["seed"] = globals.seed;
  j["count"] = count;
  j["reconstructed"] = roundtrips;
  j["chessboard"] = chessboard;
  emit(j);
  return roundtrips == count && chessboard == count ? 0 : 1;
}

int tiling_chessboard(const std::string& path, const std::string& z_text, const std::string& select, bool swap) {
  const TorusTiling t = io::tiling_from_json(read_json(path));
  const ExtremalDecomposition dec = decompose(t, make_selector(select, swap));
  TorusVector z = parse_vector(z_text);
  check_coordinates(t.d, {reduce_mod2(z)});
  const ChessboardResult r = chessboard_check(t, dec, z);
  Json j = io::report("tiling-chessboard");
  j["z"] = io::vector_to_json(reduce_mod2(std::move(z)));
  j["premise"] = r.premise;
  j["in_minus"] = r.in_minus;
  if (r.overlap_witness) {
    j["overlap_witness"] = io::vector_to_json(dec.plus[*r.overlap_witness]);
  } else {
    j["overlap_witness"] = nullptr;
  }
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dichotomous boxes, polybox invariants, word genomes and 2-extremal torus tilings"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget", globals.budget, "Enumeration budget in bits")->envname("DBOX_BUDGET")->check(CLI::Range(1, 40));
  app.add_option("--seed", globals.seed, "Random seed");
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"json", "pretty"}));

  std::string input = "-";
  std::string a;
  std::string b;
  std::string method = "all";
  std::string text;
  std::string choice;
  bool flag = false;
  std::size_t dim = 1;
  std::size_t count = 1;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "Input document (default: standard input)");
    return sub;
  };

  auto* verify_sub = with_input(app.add_subcommand("verify-suit", "Check a suit document"));
  verify_sub->add_flag("--proper", flag, "Also require every box to be proper");

  auto* boxnum_sub = with_input(app.add_subcommand("boxnum", "Box number of a suit's union or a point set"));
  auto* canon_sub = with_input(app.add_subcommand("canon", "Canonical form of a suit"));

  auto* equiv_sub = app.add_subcommand("equiv", "Do two suits have the same union?");
  equiv_sub->add_option("--a", a, "First suit")->required();
  equiv_sub->add_option("--b", b, "Second suit")->required();
  equiv_sub->add_option("--method", method)->check(CLI::IsMember({"canon", "index", "oracle", "all"}));

  auto* index_sub = app.add_subcommand("index", "Index of a suit with respect to a box");
  index_sub->add_option("--suit", input, "Proper suit")->required();
  index_sub->add_option("--box", text, "Box as a JSON array of factors, e.g. [[0],[1,2]]")->required();

  auto* codes_sub = with_input(app.add_subcommand("codes", "Binary codewords of a proper suit"));
  codes_sub->add_option("--pattern", choice)->required()->check(CLI::IsMember({"eo", "ml"}));

  auto* gcanon_sub = with_input(app.add_subcommand("genome-canon", "Canonical expansion of a genome"));

  auto* gequiv_sub = app.add_subcommand("genome-equiv", "Are two genomes equivalent?");
  gequiv_sub->add_option("--a", a, "First genome")->required();
  gequiv_sub->add_option("--b", b, "Second genome")->required();
  gequiv_sub->add_option("--method", method)->check(CLI::IsMember({"canon", "index", "cover", "all"}));

  auto* cover_sub = app.add_subcommand("cover", "Is a word covered by a genome?");
  cover_sub->add_option("--word", text, "Comma-separated letter names")->required();
  cover_sub->add_option("--genome", input, "Genome")->required();

  auto* rigidity_sub = app.add_subcommand("rigidity", "Reconstruct the minus half from the plus half");
  rigidity_sub->add_option("--plus", input, "Genome holding the plus half")->required();
  choice = "default";
  rigidity_sub->add_option("--universe", choice, "Letters tried at each position")
      ->check(CLI::IsMember({"default", "alphabet"}));

  auto* tverify_sub = with_input(app.add_subcommand("tiling-verify", "Check a torus cube tiling"));
  auto* textremal_sub = with_input(app.add_subcommand("tiling-extremal", "Is a tiling 2-extremal?"));

  std::string select = "lex";
  auto* tdecompose_sub = with_input(app.add_subcommand("tiling-decompose", "Split a 2-extremal tiling in halves"));
  tdecompose_sub->add_option("--select", select)->check(CLI::IsMember({"lex", "seed"}));
  tdecompose_sub->add_flag("--swap", flag, "Exchange the halves");

  auto* treconstruct_sub =
      with_input(app.add_subcommand("tiling-reconstruct", "Minus half of a decomposition from its plus half"));

  auto* tgen_sub = app.add_subcommand("tiling-gen", "Generate 2-extremal tilings");
  tgen_sub->add_option("--d,--dim", dim, "Dimension")->required()->check(CLI::Range(1, 30));
  tgen_sub->add_option("--count", count, "Number of tilings (seeds S, S+1, ...)");
  tgen_sub->add_flag("--check", flag, "Report rigidity and chess-board checks instead of the tilings");

  auto* tchess_sub = with_input(app.add_subcommand("tiling-chessboard", "Chess-board test for a translate z"));
  tchess_sub->add_option("--z", text, "Comma-separated rationals")->required();
  tchess_sub->add_option("--select", select)->check(CLI::IsMember({"lex", "seed"}));
  tchess_sub->add_flag("--swap", flag, "Exchange the halves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify_sub->parsed()) return verify_suit(input, flag);
    if (boxnum_sub->parsed()) return boxnum(input);
    if (canon_sub->parsed()) return canon(input);
    if (equiv_sub->parsed()) return equiv(a, b, method);
    if (index_sub->parsed()) return index_cmd(input, text);
    if (codes_sub->parsed()) return codes(input, choice);
    if (gcanon_sub->parsed()) return genome_canon(input);
    if (gequiv_sub->parsed()) return genome_equiv(a, b, method);
    if (cover_sub->parsed()) return cover(text, input);
    if (rigidity_sub->parsed()) return rigidity(input, choice);
    if (tverify_sub->parsed()) return tiling_verify_cmd(input);
    if (textremal_sub->parsed()) return tiling_extremal(input);
    if (tdecompose_sub->parsed()) return tiling_decompose(input, select, flag);
    if (treconstruct_sub->parsed()) return tiling_reconstruct(input);
    if (tgen_sub->parsed()) return tiling_gen(dim, count, flag);
    if (tchess_sub->parsed()) return tiling_chessboard(input, text, select, flag);
  } catch (const Error& e) {
    std::cout << io::error_to_json(e).dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cout << io::error_to_json("InvalidArgument", e.what()).dump() << '\n';
    return 2;
  }
  return 2;
}
