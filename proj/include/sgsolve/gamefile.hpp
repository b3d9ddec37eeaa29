#pragma once

#include <map>
#include <string>
#include <vector>

#include "sgsolve/game_models.hpp"

namespace sgsolve {

// Line-oriented structured text document for stochastic games. All numbers
// are exact "p/q" rationals. Canonical emission order makes
// parse(emit(doc)) == doc byte-identical.
//
//   game <shapley|everett|gillette>
//   positions <N>
//   name <free text>                      (optional)
//   meta <key> <tokens...>                (optional, repeatable, sorted)
//   position <k> <m> <n>                  (k = 1..N in order)
//   cell <k> <i> <j> <a> <b> <s> <p_1> ... <p_N>
//   end
struct GameDocument {
  StochasticGame game;
  std::string name;
  std::map<std::string, std::vector<std::string>> meta;

  bool operator==(const GameDocument& o) const;
};

GameDocument parse_game_document(const std::string& text);
std::string emit_game_document(const GameDocument& doc);

GameDocument load_game_file(const std::string& path);
void save_game_file(const std::string& path, const GameDocument& doc);

}  // namespace sgsolve
