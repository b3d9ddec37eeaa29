#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgsolve/algebraic.hpp"
#include "sgsolve/bounds.hpp"
#include "sgsolve/game_models.hpp"
#include "sgsolve/lattice.hpp"

namespace sgsolve {

struct SolverOptions {
  long precision_ceiling = 0;  // 0: use SGSOLVE_PRECISION_CEILING or the default
  long everett_C = 2;
  long gillette_C = 2;
  // Heuristic reconstruction bounds for the Gillette lambda ladder.
  long ladder_degree_cap = 4;
  long ladder_height_bits = 32;
  int ladder_min_rungs = 4;
  long ladder_floor_exponent = 4096;
  // Upper bound on the estimated number of inner bisection probes before a
  // solve refuses to start (the recursion is exponential in the position
  // count). 0: use SGSOLVE_WORK_CAP or the default.
  long work_cap = 0;

  long effective_ceiling() const;
  long effective_work_cap() const;
};

// Rough upper estimate of the number of innermost bisection probes that
// approx_val would perform on this game at accuracy k.
double estimate_bisection_work(const StochasticGame& everett_normalized, long k,
                               const BoundProfile& profile);

struct LadderRung {
  Rat lambda;
  std::vector<Rat> estimates;  // lambda * v_lambda per position (normalized game)
};

struct SolveAudit {
  long approx_k = 0;
  BoundProfile profile;
  Rat scale = Rat(1);
  long tau_normalized = 1;
  std::vector<long> reconstruction_precision;
  std::vector<LadderRung> lambda_ladder;
  bool approximate_only = false;
  std::vector<std::string> notes;
  std::string to_text() const;
};

struct SolveResult {
  std::vector<AlgebraicNumber> values;  // unscaled, one per position
  std::vector<Dyadic> approx_values;    // unscaled dyadic approximations
  long approx_bits = 0;                 // grid of approx_values
  std::optional<std::pair<StationaryStrategy, StationaryStrategy>> strategies;
  SolveAudit audit;
};

// Per-position exact optimal strategies in isolating-interval encoding.
struct ExactStrategies {
  std::vector<std::vector<AlgebraicNumber>> row;  // row[k][i]
  std::vector<std::vector<AlgebraicNumber>> col;  // col[k][j]
};

// The recursive bisection for the last position of a normalized Everett game
// (payoffs in [-1,1]): returns a dyadic v with |v - v*| <= 2^-k. When trace
// is non-null the (v_l, v_r) endpoint pair after every iteration is appended.
Dyadic approx_bisect(const StochasticGame& everett_normalized, long k, const BoundProfile& profile,
                     std::vector<std::pair<Dyadic, Dyadic>>* trace = nullptr);

// Per-coordinate approximation: position i is swapped into the last slot and
// approx_bisect is run on the swapped game.
std::vector<Dyadic> approx_val(const StochasticGame& everett_normalized, long k,
                               const BoundProfile& profile);

SolveResult solve_shapley_exact(const StochasticGame& g, const SolverOptions& opts = {});
SolveResult solve_everett(const StochasticGame& g, long C, const SolverOptions& opts = {});
SolveResult solve_gillette(const StochasticGame& g, long C, const SolverOptions& opts = {});

// Stationary strategies that are eps-optimal from every position, from exact
// solutions of the local games at an approximate valuation.
std::pair<StationaryStrategy, StationaryStrategy> eps_optimal_strategy_shapley(
    const StochasticGame& g, const Rat& eps, const SolverOptions& opts = {});

// Exact optimal stationary strategies (Shapley): optimal basis stabilization,
// certified interval evaluation of the Cramer quotients at the value vector,
// reconstruction of each probability as an algebraic number.
ExactStrategies exact_optimal_strategy_shapley(const StochasticGame& g,
                                               const SolverOptions& opts = {});

// An exactly verified point of C1 (player I) and C2 (player II) within eps of
// the critical vector; strategies of the local games there, with dyadic
// rounding re-verified exactly. 2*eps-optimal.
std::pair<StationaryStrategy, StationaryStrategy> eps_optimal_strategy_everett(
    const StochasticGame& g, const Rat& eps, long C, const SolverOptions& opts = {});

// The same construction with its certificates exposed: the C1 point of the
// normalized game, the mirror game's C1 point (its negation lies in C2), and
// the rounded strategies that re-verify against those points.
struct EverettStrategyCertificate {
  StochasticGame normalized;       // the game the points refer to
  StochasticGame mirror;           // payoff-mirrored game
  std::vector<Rat> c1_point;       // exactly in C1(normalized)
  std::vector<Rat> c1_point_mirror;  // exactly in C1(mirror)
  StationaryStrategy x, y;         // rounded, re-verified
};
EverettStrategyCertificate eps_optimal_strategy_everett_certified(
    const StochasticGame& g, const Rat& eps, long C, const SolverOptions& opts = {});

// One-shot dominance certificate: x guarantees at least v1_k in every local
// game A^k(v1), strictly where v1_k > 0.
bool strategy_certifies_c1(const StochasticGame& g, const std::vector<Rat>& v1,
                           const StationaryStrategy& x);

// The exactly verified C1 point itself (used by the strategy construction and
// its certificates).
std::vector<Rat> everett_c1_point(const StochasticGame& everett_normalized, const Rat& eps, long C,
                                  const SolverOptions& opts = {});

// Payoff-mirrored game: player II's viewpoint (negated payoffs, transposed
// action matrices). C2 of g corresponds to C1 of the mirror under negation.
StochasticGame mirror_everett(const StochasticGame& g);

}  // namespace sgsolve
