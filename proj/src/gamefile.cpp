#include "sgsolve/gamefile.hpp"

#include <fstream>
#include <sstream>

namespace sgsolve {

bool GameDocument::operator==(const GameDocument& o) const {
  if (name != o.name || meta != o.meta) return false;
  const StochasticGame &a = game, &b = o.game;
  if (a.variant != b.variant || a.N != b.N || a.m != b.m || a.n != b.n) return false;
  for (int k = 0; k < a.N; ++k)
    for (size_t c = 0; c < a.cells[k].size(); ++c) {
      const Cell &x = a.cells[k][c], &y = b.cells[k][c];
      if (x.a != y.a || x.b != y.b || x.s != y.s || x.p != y.p) return false;
    }
  return true;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw invalid_input("line " + std::to_string(lineno) + ": " + msg);
}

int parse_index(const std::string& s, int lineno, const char* what, int lo, int hi) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    if (v < lo || v > hi) fail(lineno, std::string(what) + " out of range: " + s);
    return v;
  } catch (const std::exception&) {
    fail(lineno, std::string("malformed ") + what + " '" + s + "'");
  }
}

}  // namespace

GameDocument parse_game_document(const std::string& text) {
  GameDocument doc;
  StochasticGame& g = doc.game;
  bool have_game = false, have_positions = false, ended = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::vector<bool> position_seen;
  std::vector<std::vector<bool>> cell_seen;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::vector<std::string> t = tokenize(line);
    if (t.empty()) continue;
    if (ended) fail(lineno, "content after 'end'");
    const std::string& kw = t[0];
    if (kw == "game") {
      if (t.size() != 2) fail(lineno, "usage: game <variant>");
      if (t[1] == "shapley")
        g.variant = GameVariant::shapley;
      else if (t[1] == "everett")
        g.variant = GameVariant::everett;
      else if (t[1] == "gillette")
        g.variant = GameVariant::gillette;
      else
        fail(lineno, "unknown variant '" + t[1] + "'");
      have_game = true;
    } else if (kw == "positions") {
      if (!have_game) fail(lineno, "'positions' before 'game'");
      if (t.size() != 2) fail(lineno, "usage: positions <N>");
      int N = parse_index(t[1], lineno, "position count", 0, 1 << 20);
      g = StochasticGame::empty(g.variant, N);
      position_seen.assign(N, false);
      cell_seen.assign(N, {});
      have_positions = true;
    } else if (kw == "name") {
      std::string n;
      for (size_t i = 1; i < t.size(); ++i) {
        if (i > 1) n += " ";
        n += t[i];
      }
      doc.name = n;
    } else if (kw == "meta") {
      if (t.size() < 2) fail(lineno, "usage: meta <key> <tokens...>");
      doc.meta[t[1]] = std::vector<std::string>(t.begin() + 2, t.end());
    } else if (kw == "position") {
      if (!have_positions) fail(lineno, "'position' before 'positions'");
      if (t.size() != 4) fail(lineno, "usage: position <k> <m> <n>");
      int k = parse_index(t[1], lineno, "position index", 1, g.N);
      int m = parse_index(t[2], lineno, "row count", 1, 1 << 12);
      int n = parse_index(t[3], lineno, "column count", 1, 1 << 12);
      g.resize_position(k - 1, m, n);
      position_seen[k - 1] = true;
      cell_seen[k - 1].assign(m * n, false);
    } else if (kw == "cell") {
      if (!have_positions) fail(lineno, "'cell' before 'positions'");
      if (t.size() != static_cast<size_t>(7 + g.N))
        fail(lineno, "cell line needs 6 fields plus " + std::to_string(g.N) + " transitions");
      int k = parse_index(t[1], lineno, "position index", 1, g.N);
      if (!position_seen[k - 1]) fail(lineno, "cell before its position line");
      int i = parse_index(t[2], lineno, "row index", 1, g.m[k - 1]);
      int j = parse_index(t[3], lineno, "column index", 1, g.n[k - 1]);
      Cell& c = g.cell(k - 1, i - 1, j - 1);
      try {
        c.a = parse_rat(t[4]);
        c.b = parse_rat(t[5]);
        c.s = parse_rat(t[6]);
        for (int l = 0; l < g.N; ++l) c.p[l] = parse_rat(t[7 + l]);
      } catch (const invalid_input& e) {
        fail(lineno, "position " + std::to_string(k) + " cell (" + std::to_string(i) + "," +
                         std::to_string(j) + "): " + e.what());
      }
      cell_seen[k - 1][(i - 1) * g.n[k - 1] + (j - 1)] = true;
    } else if (kw == "end") {
      ended = true;
    } else {
      fail(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_game) throw invalid_input("missing 'game' line");
  if (!have_positions) throw invalid_input("missing 'positions' line");
  if (!ended) throw invalid_input("missing 'end' line");
  for (int k = 0; k < g.N; ++k) {
    if (!position_seen[k])
      throw invalid_input("position " + std::to_string(k + 1) + " never declared");
    for (size_t c = 0; c < cell_seen[k].size(); ++c)
      if (!cell_seen[k][c])
        throw invalid_input("position " + std::to_string(k + 1) + " has undeclared cells");
  }
  // Canonicalize b in non-stopping cells so document equality is meaningful.
  for (int k = 0; k < g.N; ++k)
    for (Cell& c : g.cells[k])
      if (sign(c.s) == 0) c.b = 0;
  validate(g);
  return doc;
}

std::string emit_game_document(const GameDocument& doc) {
  const StochasticGame& g = doc.game;
  std::ostringstream os;
  os << "game " << variant_name(g.variant) << "\n";
  os << "positions " << g.N << "\n";
  if (!doc.name.empty()) os << "name " << doc.name << "\n";
  for (const auto& [key, toks] : doc.meta) {
    os << "meta " << key;
    for (const std::string& t : toks) os << " " << t;
    os << "\n";
  }
  for (int k = 0; k < g.N; ++k) os << "position " << (k + 1) << " " << g.m[k] << " " << g.n[k] << "\n";
  for (int k = 0; k < g.N; ++k)
    for (int i = 0; i < g.m[k]; ++i)
      for (int j = 0; j < g.n[k]; ++j) {
        const Cell& c = g.cell(k, i, j);
        os << "cell " << (k + 1) << " " << (i + 1) << " " << (j + 1) << " " << rat_to_string(c.a)
           << " " << rat_to_string(c.b) << " " << rat_to_string(c.s);
        for (int l = 0; l < g.N; ++l) os << " " << rat_to_string(c.p[l]);
        os << "\n";
      }
  os << "end\n";
  return os.str();
}

GameDocument load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open game file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game_document(buf.str());
}

void save_game_file(const std::string& path, const GameDocument& doc) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot write game file '" + path + "'");
  out << emit_game_document(doc);
}

}  // namespace sgsolve
