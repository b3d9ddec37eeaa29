#pragma once

#include <string>
#include <vector>

#include "sgsolve/matrix_game.hpp"
#include "sgsolve/numeric.hpp"

namespace sgsolve {

enum class GameVariant { shapley, everett, gillette };

std::string variant_name(GameVariant v);

// One action-pair cell of a position: running reward a, termination payoff b,
// stop probability s and transition probabilities p[l] into each position.
struct Cell {
  Rat a, b, s;
  std::vector<Rat> p;
};

// Tagged union of Shapley / Everett / Gillette position-indexed data.
//   shapley : s > 0 everywhere, b = 0
//   everett : a = 0, s >= 0 (b meaningful where s > 0)
//   gillette: s = 0, b = 0 (payoff = liminf average reward)
struct StochasticGame {
  GameVariant variant = GameVariant::shapley;
  int N = 0;
  std::vector<int> m, n;             // per-position action counts
  std::vector<std::vector<Cell>> cells;  // cells[k][i*n[k]+j]

  const Cell& cell(int k, int i, int j) const { return cells[k][i * n[k] + j]; }
  Cell& cell(int k, int i, int j) { return cells[k][i * n[k] + j]; }

  static StochasticGame empty(GameVariant v, int N);
  void resize_position(int k, int mk, int nk);

  // max_k min(m_k, n_k): the action-count parameter of the bound formulas.
  int max_actions() const;
  // max bitsize over every rational in the game description.
  long bitsize_tau() const;
  // min stop probability (Shapley games; throws if a cell has s = 0).
  Rat min_stop_probability() const;
  // max |a| (shapley/gillette) or max |b| over stopping cells (everett).
  Rat max_abs_payoff() const;
};

// Per-position mixed action probabilities for one player.
struct StationaryStrategy {
  std::vector<std::vector<Rat>> rows;  // rows[k] sums to 1
  bool valid() const;
};

// Enforces the variant invariants exactly; reports the first violated
// constraint with position/action indices.
void validate(const StochasticGame& g);

// Pure scaling by 1/scale with scale = max(1, max |payoff|); payoffs of the
// result lie in [-1,1], transitions are unchanged and value vectors scale by
// the same factor.
std::pair<StochasticGame, Rat> normalize(const StochasticGame& g);

// b = a/s cellwise, a zeroed; identical value vector.
StochasticGame shapley_to_everett(const StochasticGame& g);

// Each termination outcome becomes an absorbing position with recurring
// reward b; one absorbing position per distinct termination payoff value
// (appended in increasing payoff order).
StochasticGame everett_to_gillette(const StochasticGame& g);

// Shapley game with stop probability lambda everywhere and transitions scaled
// by 1 - lambda; lambda * val converges to the Gillette value as lambda -> 0+.
StochasticGame gillette_discount(const StochasticGame& g, const Rat& lambda);

// The parameterized local game A^k(v):
//   shapley: a + sum_l p_l v_l     everett: s b + sum_l p_l v_l
MatrixGame local_game(const StochasticGame& g, int k, const std::vector<Rat>& v);

// T(v) = (val(A^1(v)), ..., val(A^N(v))) for Shapley games.
std::vector<Rat> apply_T(const StochasticGame& g, const std::vector<Rat>& v);
// The Everett value mapping M, same formula with Everett local games.
std::vector<Rat> apply_M(const StochasticGame& g, const std::vector<Rat>& v);

// Exact membership in the C1/C2 regions (dotted inequalities).
bool in_C1(const StochasticGame& g, const std::vector<Rat>& v);
bool in_C2(const StochasticGame& g, const std::vector<Rat>& v);

// Game on positions 1..N obtained by turning every transition into position
// N+1 into stopping with payoff v. Always emitted in Everett form; Shapley
// inputs are converted first.
StochasticGame reduced_game(const StochasticGame& g, const Rat& v);

// Positions ki and kj swapped (payoff data and transition indices).
StochasticGame swap_positions(const StochasticGame& g, int ki, int kj);

// Iterate T from 0 with grid rounding until the result is within 2^-k of the
// value vector in infinity norm (normalized Shapley games).
std::vector<Rat> value_iterate_oracle(const StochasticGame& g, long k);

}  // namespace sgsolve
