#include "sgsolve/game_models.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sgsolve {

std::string variant_name(GameVariant v) {
  switch (v) {
    case GameVariant::shapley: return "shapley";
    case GameVariant::everett: return "everett";
    case GameVariant::gillette: return "gillette";
  }
  return "?";
}

StochasticGame StochasticGame::empty(GameVariant v, int N) {
  StochasticGame g;
  g.variant = v;
  g.N = N;
  g.m.assign(N, 0);
  g.n.assign(N, 0);
  g.cells.assign(N, {});
  return g;
}

void StochasticGame::resize_position(int k, int mk, int nk) {
  m[k] = mk;
  n[k] = nk;
  Cell blank;
  blank.a = 0;
  blank.b = 0;
  blank.s = 0;
  blank.p.assign(N, Rat(0));
  cells[k].assign(mk * nk, blank);
}

int StochasticGame::max_actions() const {
  int r = 1;
  for (int k = 0; k < N; ++k) r = std::max(r, std::min(m[k], n[k]));
  return r;
}

long StochasticGame::bitsize_tau() const {
  long t = 1;
  for (int k = 0; k < N; ++k)
    for (const Cell& c : cells[k]) {
      t = std::max(t, bitsize(c.a));
      t = std::max(t, bitsize(c.b));
      t = std::max(t, bitsize(c.s));
      for (const Rat& p : c.p) t = std::max(t, bitsize(p));
    }
  return t;
}

Rat StochasticGame::min_stop_probability() const {
  bool first = true;
  Rat mn(0);
  for (int k = 0; k < N; ++k)
    for (const Cell& c : cells[k]) {
      if (first || c.s < mn) mn = c.s;
      first = false;
    }
  if (first) throw invalid_input("empty game has no stop probability");
  return mn;
}

Rat StochasticGame::max_abs_payoff() const {
  Rat mx(0);
  for (int k = 0; k < N; ++k)
    for (const Cell& c : cells[k]) {
      Rat v = variant == GameVariant::everett ? abs(c.b) : abs(c.a);
      if (variant == GameVariant::everett && sign(c.s) == 0) v = 0;
      if (v > mx) mx = v;
    }
  return mx;
}

bool StationaryStrategy::valid() const {
  for (const auto& r : rows) {
    Rat s(0);
    for (const Rat& p : r) {
      if (sign(p) < 0) return false;
      s += p;
    }
    if (s != 1) return false;
  }
  return true;
}

namespace {
std::string cell_name(int k, int i, int j) {
  std::ostringstream os;
  os << "position " << (k + 1) << " cell (" << (i + 1) << "," << (j + 1) << ")";
  return os.str();
}
}  // namespace

void validate(const StochasticGame& g) {
  if (g.N < 0) throw invalid_input("negative number of positions");
  if (static_cast<int>(g.m.size()) != g.N || static_cast<int>(g.n.size()) != g.N ||
      static_cast<int>(g.cells.size()) != g.N)
    throw invalid_input("inconsistent position arrays");
  for (int k = 0; k < g.N; ++k) {
    if (g.m[k] < 1 || g.n[k] < 1) throw invalid_input("position " + std::to_string(k + 1) + " needs m,n >= 1");
    if (static_cast<int>(g.cells[k].size()) != g.m[k] * g.n[k])
      throw invalid_input("position " + std::to_string(k + 1) + " has wrong cell count");
    for (int i = 0; i < g.m[k]; ++i)
      for (int j = 0; j < g.n[k]; ++j) {
        const Cell& c = g.cell(k, i, j);
        if (static_cast<int>(c.p.size()) != g.N)
          throw invalid_input(cell_name(k, i, j) + ": transition vector length != N");
        if (sign(c.s) < 0) throw invalid_input(cell_name(k, i, j) + ": negative stop probability");
        Rat mass = c.s;
        for (int l = 0; l < g.N; ++l) {
          if (sign(c.p[l]) < 0)
            throw invalid_input(cell_name(k, i, j) + ": negative transition probability");
          mass += c.p[l];
        }
        if (mass != 1)
          throw invalid_input(cell_name(k, i, j) + ": probabilities sum to " + rat_to_string(mass) +
                              ", expected 1");
        switch (g.variant) {
          case GameVariant::shapley:
            if (sign(c.s) <= 0)
              throw invalid_input(cell_name(k, i, j) + ": shapley game needs s > 0");
            if (sign(c.b) != 0)
              throw invalid_input(cell_name(k, i, j) + ": shapley game needs b = 0");
            break;
          case GameVariant::everett:
            if (sign(c.a) != 0)
              throw invalid_input(cell_name(k, i, j) + ": everett game needs a = 0");
            break;
          case GameVariant::gillette:
            if (sign(c.s) != 0)
              throw invalid_input(cell_name(k, i, j) + ": gillette game needs s = 0");
            if (sign(c.b) != 0)
              throw invalid_input(cell_name(k, i, j) + ": gillette game needs b = 0");
            break;
        }
      }
  }
}

std::pair<StochasticGame, Rat> normalize(const StochasticGame& g) {
  Rat scale = g.max_abs_payoff();
  if (scale < 1) scale = 1;
  StochasticGame out = g;
  if (scale != 1) {
    for (int k = 0; k < g.N; ++k)
      for (Cell& c : out.cells[k]) {
        c.a /= scale;
        c.b /= scale;
      }
  }
  return {std::move(out), scale};
}

StochasticGame shapley_to_everett(const StochasticGame& g) {
  if (g.variant != GameVariant::shapley) throw invalid_input("shapley_to_everett: wrong variant");
  StochasticGame out = g;
  out.variant = GameVariant::everett;
  for (int k = 0; k < g.N; ++k)
    for (Cell& c : out.cells[k]) {
      if (sign(c.s) <= 0) throw invalid_input("shapley_to_everett: s = 0 cell");
      c.b = c.a / c.s;
      c.a = 0;
    }
  return out;
}

StochasticGame everett_to_gillette(const StochasticGame& g) {
  if (g.variant != GameVariant::everett) throw invalid_input("everett_to_gillette: wrong variant");
  // Collect distinct termination payoffs over stopping cells.
  std::map<Rat, int> payoff_slot;
  for (int k = 0; k < g.N; ++k)
    for (const Cell& c : g.cells[k])
      if (sign(c.s) > 0) payoff_slot.emplace(c.b, 0);
  int extra = 0;
  for (auto& kv : payoff_slot) kv.second = g.N + extra++;

  StochasticGame out = StochasticGame::empty(GameVariant::gillette, g.N + extra);
  for (int k = 0; k < g.N; ++k) {
    out.resize_position(k, g.m[k], g.n[k]);
    for (int i = 0; i < g.m[k]; ++i)
      for (int j = 0; j < g.n[k]; ++j) {
        const Cell& c = g.cell(k, i, j);
        Cell& o = out.cell(k, i, j);
        o.a = 0;
        o.b = 0;
        o.s = 0;
        for (int l = 0; l < g.N; ++l) o.p[l] = c.p[l];
        if (sign(c.s) > 0) o.p[payoff_slot.at(c.b)] += c.s;
      }
  }
  for (const auto& kv : payoff_slot) {
    int k = kv.second;
    out.resize_position(k, 1, 1);
    Cell& o = out.cell(k, 0, 0);
    o.a = kv.first;
    o.p[k] = 1;
  }
  return out;
}

StochasticGame gillette_discount(const StochasticGame& g, const Rat& lambda) {
  if (g.variant != GameVariant::gillette) throw invalid_input("gillette_discount: wrong variant");
  if (!(lambda > 0 && lambda < 1)) throw invalid_input("gillette_discount: lambda outside (0,1)");
  StochasticGame out = g;
  out.variant = GameVariant::shapley;
  Rat keep = Rat(1) - lambda;
  for (int k = 0; k < g.N; ++k)
    for (Cell& c : out.cells[k]) {
      c.s = lambda;
      for (Rat& p : c.p) p *= keep;
    }
  return out;
}

MatrixGame local_game(const StochasticGame& g, int k, const std::vector<Rat>& v) {
  if (g.variant == GameVariant::gillette)
    throw invalid_input("local_game: defined for gillette only through its discounted form");
  if (static_cast<int>(v.size()) != g.N) throw invalid_input("local_game: valuation length != N");
  if (k < 0 || k >= g.N) throw invalid_input("local_game: position out of range");
  MatrixGame mg(g.m[k], g.n[k]);
  for (int i = 0; i < g.m[k]; ++i)
    for (int j = 0; j < g.n[k]; ++j) {
      const Cell& c = g.cell(k, i, j);
      Rat e = (g.variant == GameVariant::shapley) ? c.a : c.s * c.b;
      for (int l = 0; l < g.N; ++l)
        if (sign(c.p[l]) != 0) e += c.p[l] * v[l];
      mg.at(i, j) = e;
    }
  return mg;
}

namespace {
std::vector<Rat> apply_value_map(const StochasticGame& g, const std::vector<Rat>& v) {
  std::vector<Rat> out(g.N);
  for (int k = 0; k < g.N; ++k) out[k] = solve(local_game(g, k, v)).value;
  return out;
}
}  // namespace

std::vector<Rat> apply_T(const StochasticGame& g, const std::vector<Rat>& v) {
  if (g.variant != GameVariant::shapley) throw invalid_input("apply_T: shapley games only");
  return apply_value_map(g, v);
}

std::vector<Rat> apply_M(const StochasticGame& g, const std::vector<Rat>& v) {
  if (g.variant != GameVariant::everett) throw invalid_input("apply_M: everett games only");
  return apply_value_map(g, v);
}

bool in_C1(const StochasticGame& g, const std::vector<Rat>& v) {
  std::vector<Rat> mv = apply_M(g, v);
  for (int i = 0; i < g.N; ++i) {
    if (sign(v[i]) > 0) {
      if (!(mv[i] > v[i])) return false;
    } else {
      if (!(mv[i] >= v[i])) return false;
    }
  }
  return true;
}

bool in_C2(const StochasticGame& g, const std::vector<Rat>& v) {
  std::vector<Rat> mv = apply_M(g, v);
  for (int i = 0; i < g.N; ++i) {
    if (sign(v[i]) < 0) {
      if (!(mv[i] < v[i])) return false;
    } else {
      if (!(mv[i] <= v[i])) return false;
    }
  }
  return true;
}

StochasticGame reduced_game(const StochasticGame& g, const Rat& v) {
  if (g.N < 1) throw invalid_input("reduced_game: needs at least one position");
  StochasticGame src = g.variant == GameVariant::shapley ? shapley_to_everett(g) : g;
  if (src.variant != GameVariant::everett)
    throw invalid_input("reduced_game: shapley or everett input required");
  int N = g.N - 1;
  StochasticGame out = StochasticGame::empty(GameVariant::everett, N);
  for (int k = 0; k < N; ++k) {
    out.resize_position(k, src.m[k], src.n[k]);
    for (int i = 0; i < src.m[k]; ++i)
      for (int j = 0; j < src.n[k]; ++j) {
        const Cell& c = src.cell(k, i, j);
        Cell& o = out.cell(k, i, j);
        Rat into_last = c.p[N];
        Rat s2 = c.s + into_last;
        o.s = s2;
        o.b = 0;
        if (sign(s2) > 0) {
          // merged termination payoff keeps s*b mass exact
          o.b = (c.s * c.b + into_last * v) / s2;
        }
        for (int l = 0; l < N; ++l) o.p[l] = c.p[l];
      }
  }
  return out;
}

StochasticGame swap_positions(const StochasticGame& g, int ki, int kj) {
  if (ki == kj) return g;
  StochasticGame out = g;
  std::swap(out.m[ki], out.m[kj]);
  std::swap(out.n[ki], out.n[kj]);
  std::swap(out.cells[ki], out.cells[kj]);
  for (int k = 0; k < g.N; ++k)
    for (Cell& c : out.cells[k]) std::swap(c.p[ki], c.p[kj]);
  return out;
}

std::vector<Rat> value_iterate_oracle(const StochasticGame& g, long k) {
  if (g.variant != GameVariant::shapley) throw invalid_input("value_iterate_oracle: shapley games only");
  if (k < 0) throw invalid_input("value_iterate_oracle: k must be >= 0");
  Rat smin = g.min_stop_probability();
  if (sign(smin) <= 0) throw invalid_input("value_iterate_oracle: needs positive stop probabilities");
  // ||v*||_inf <= B0 = max |a/s| (the termination-payoff view of the game).
  Rat b0(0);
  for (int kk = 0; kk < g.N; ++kk)
    for (const Cell& c : g.cells[kk]) {
      Rat t = abs(c.a) / c.s;
      if (t > b0) b0 = t;
    }
  long lgb0 = b0 <= 1 ? 0 : ceil_log2(Int(b0.get_num()) / Int(b0.get_den()) + 1);
  long t;
  if (smin == 1) {
    t = 1;
  } else {
    // smallest t with (1 - smin)^t * B0 <= 2^-(k+1)
    auto [lo, hi] = log2_bounds(Rat(1) - smin);
    (void)lo;
    Rat need = Rat(k + 1 + lgb0);
    Rat tt = need / (-hi);  // -hi is a certified lower bound on -log2(1-smin)
    Int num = tt.get_num(), den = tt.get_den();
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (!q.fits_slong_p())
      throw precision_exhausted("value iteration count overflows a machine integer");
    t = std::max(1L, q.get_si());
  }
  long lg_inv_smin = 0;
  {
    Rat inv = Rat(1) / smin;
    lg_inv_smin = ceil_log2(Int(inv.get_num()) / Int(inv.get_den()) + 1);
  }
  long grid = k + 1 + lg_inv_smin;
  std::vector<Rat> v(g.N, Rat(0));
  for (long it = 0; it < t; ++it) {
    v = apply_T(g, v);
    for (Rat& x : v) x = round_rat_to_grid(x, grid);
  }
  return v;
}

}  // namespace sgsolve
