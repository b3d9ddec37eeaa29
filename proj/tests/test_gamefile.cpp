#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sgsolve/degree_lab.hpp"
#include "sgsolve/gamefile.hpp"
#include "test_util.hpp"

using namespace sgsolve;
using testutil::Q;

namespace {
GameDocument sample_doc() {
  GameDocument doc;
  doc.game = diagonal_game({{Q(1, 8), Q(1, 4)}, Q(1, 2)});
  doc.name = "sample instance";
  doc.meta["kind"] = {"diagonal"};
  doc.meta["alphas"] = {"1/8", "1/4"};
  return doc;
}
}  // namespace

TEST_CASE("emit/parse round trip is byte identical") {
  GameDocument doc = sample_doc();
  std::string text = emit_game_document(doc);
  GameDocument back = parse_game_document(text);
  CHECK(back == doc);
  CHECK(emit_game_document(back) == text);
}

TEST_CASE("round trip across variants") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    GameDocument doc;
    doc.game = testutil::random_shapley_game(rng, 3, 3, 4);
    std::string text = emit_game_document(doc);
    CHECK(parse_game_document(text) == doc);
  }
  GameDocument ev;
  ev.game = shapley_to_everett(diagonal_game({{Q(1, 4)}, Q(1, 2)}));
  CHECK(parse_game_document(emit_game_document(ev)) == ev);
  GameDocument gi;
  gi.game = everett_to_gillette(ev.game);
  CHECK(parse_game_document(emit_game_document(gi)) == gi);
}

TEST_CASE("parser rejects malformed input with locations") {
  std::string base =
      "game shapley\npositions 1\nposition 1 1 1\ncell 1 1 1 1/4 0 1/2 1/2\nend\n";
  CHECK_NOTHROW(parse_game_document(base));

  // zero denominator names the cell
  std::string bad = base;
  bad.replace(bad.find("1/4"), 3, "1/0");
  try {
    parse_game_document(bad);
    CHECK(false);
  } catch (const invalid_input& e) {
    std::string msg = e.what();
    CHECK(msg.find("cell (1,1)") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_game_document("positions 1\nend\n"), invalid_input);
  CHECK_THROWS_AS(parse_game_document("game shapley\nend\n"), invalid_input);
  CHECK_THROWS_AS(parse_game_document("game shapley\npositions 1\nposition 1 1 1\nend\n"),
                  invalid_input);
  // probabilities that do not sum to 1 fail validation
  std::string deficit =
      "game shapley\npositions 1\nposition 1 1 1\ncell 1 1 1 1/4 0 1/2 1/4\nend\n";
  CHECK_THROWS_AS(parse_game_document(deficit), invalid_input);
}

TEST_CASE("b is canonicalized to 0 where s = 0") {
  std::string text =
      "game everett\npositions 1\nposition 1 1 1\ncell 1 1 1 0 7/9 0 1\nend\n";
  GameDocument doc = parse_game_document(text);
  CHECK(doc.game.cell(0, 0, 0).b == Q(0));
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text =
      "# header\n\ngame shapley\npositions 1\n# positions done\nposition 1 1 1\n"
      "cell 1 1 1 1/4 0 1/2 1/2   # trailing\nend\n";
  CHECK_NOTHROW(parse_game_document(text));
}
