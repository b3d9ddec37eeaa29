#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sgsolve/degree_lab.hpp"
#include "sgsolve/fixed_point.hpp"
#include "sgsolve/gamefile.hpp"
#include "sgsolve/lattice.hpp"
#include "sgsolve/solver.hpp"

using namespace sgsolve;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecision = 3;

// Decimal expansion truncated toward zero to `digits` places, with an
// exact/truncated marker.
std::string decimal_string(const AlgebraicNumber& a, int digits) {
  AlgebraicNumber r = a;
  Int p10 = pow_int(Int(10), digits);
  // refine until both interval ends agree on the truncation
  for (long k = 8;; k *= 2) {
    r = r.refined(k);
    Rat lo = r.lo() * Rat(p10), hi = r.hi() * Rat(p10);
    Int flo, fhi;
    mpz_tdiv_q(flo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_tdiv_q(fhi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    if (flo == fhi || r.is_rational()) {
      Int t = flo;
      bool neg = sign(t) < 0;
      Int at = ::abs(t);
      Int ip = at / p10, fp = at % p10;
      std::string frac = fp.get_str();
      while (static_cast<int>(frac.size()) < digits) frac = "0" + frac;
      std::string out = (neg ? "-" : "") + ip.get_str();
      if (digits > 0) out += "." + frac;
      bool exact = r.is_rational() && r.rational_value() * Rat(p10) == Rat(t);
      out += exact ? " (exact)" : " (truncated)";
      return out;
    }
    if (k > (1L << 20)) return "(unresolved)";
  }
}

StochasticGame apply_variant_override(StochasticGame g, const std::string& ov) {
  if (ov.empty()) return g;
  if (ov == "shapley")
    g.variant = GameVariant::shapley;
  else if (ov == "everett")
    g.variant = GameVariant::everett;
  else if (ov == "gillette")
    g.variant = GameVariant::gillette;
  else
    throw invalid_input("unknown variant override '" + ov + "'");
  validate(g);
  return g;
}

int cmd_solve(const std::string& path, const std::string& variant_override, long everett_C,
              long gillette_C, const std::string& strategies, int digits, long approx_only) {
  GameDocument doc = load_game_file(path);
  StochasticGame g = apply_variant_override(doc.game, variant_override);
  std::ostringstream out;
  if (!doc.name.empty()) out << "name " << doc.name << "\n";
  out << "variant " << variant_name(g.variant) << "\n";
  out << "positions " << g.N << "\n";

  if (approx_only > 0) {
    long k = approx_only;
    if (g.variant == GameVariant::gillette) {
      auto [gn, scale] = normalize(g);
      Rat prev;
      bool have_prev = false;
      for (long ex = 8; ex <= 4096; ++ex) {
        Rat lambda = pow2_rat(-ex);
        FixedPointResult fp =
            certified_fixed_point(gillette_discount(gn, lambda), std::max(48L, k + 8 - ex));
        if (!fp.converged) throw precision_exhausted("inner fixed point stalled");
        Rat est = lambda * fp.values[0];
        if (have_prev && abs(est - prev) < pow2_rat(-(k + 2))) {
          for (int i = 0; i < g.N; ++i) {
            Rat vi = lambda * fp.values[i] * scale;
            out << "approx " << (i + 1) << " "
                << rat_to_string(Dyadic::round_to_grid(vi, k + 2).to_rat()) << "\n";
          }
          out << "approx_grid " << (k + 2) << "\n";
          std::cout << out.str();
          return kExitOk;
        }
        prev = est;
        have_prev = true;
      }
      throw precision_exhausted("lambda floor reached in approximate mode");
    }
    StochasticGame eve = g.variant == GameVariant::shapley ? shapley_to_everett(g) : g;
    auto [gn, scale] = normalize(eve);
    BoundProfile prof =
        g.variant == GameVariant::shapley
            ? shapley_bounds(std::max(g.N, 1), gn.max_actions(), gn.bitsize_tau())
            : everett_bounds(std::max(g.N, 1), gn.max_actions(), gn.bitsize_tau(), everett_C);
    long lg_scale = scale > 1 ? ceil_log2(Int(scale.get_num()) / Int(scale.get_den()) + 1) : 0;
    std::vector<Dyadic> w = approx_val(gn, k + lg_scale + 1, prof);
    for (int i = 0; i < g.N; ++i)
      out << "approx " << (i + 1) << " "
          << rat_to_string(Dyadic::round_to_grid(w[i].to_rat() * scale, k).to_rat()) << "\n";
    out << "approx_grid " << k << "\n";
    std::cout << out.str();
    return kExitOk;
  }

  SolverOptions opts;
  SolveResult res;
  bool exact_strategy_fallback = false;
  switch (g.variant) {
    case GameVariant::shapley: res = solve_shapley_exact(g, opts); break;
    case GameVariant::everett: res = solve_everett(g, everett_C, opts); break;
    case GameVariant::gillette: res = solve_gillette(g, gillette_C, opts); break;
  }
  for (int i = 0; i < g.N; ++i) {
    AlgebraicNumber shown = res.values[i].tidied(16 + 4 * digits);
    out << "value " << (i + 1) << " polynomial " << shown.defining_poly().to_string() << "\n";
    out << "value " << (i + 1) << " interval [" << rat_to_string(shown.lo()) << ", "
        << rat_to_string(shown.hi()) << "]\n";
    out << "value " << (i + 1) << " decimal " << decimal_string(shown, digits) << "\n";
  }

  // Strategy emission. Default: exact for shapley (eps fallback on precision
  // exhaustion), eps for everett, none for gillette.
  std::string smode = strategies;
  if (smode.empty()) {
    if (g.variant == GameVariant::shapley)
      smode = "exact";
    else if (g.variant == GameVariant::everett)
      smode = "eps=1/1024";
    else
      smode = "none";
  }
  if (smode == "exact" && g.variant == GameVariant::shapley) {
    try {
      ExactStrategies es = exact_optimal_strategy_shapley(g, opts);
      for (int kpos = 0; kpos < g.N; ++kpos) {
        for (size_t i = 0; i < es.row[kpos].size(); ++i)
          out << "strategy I " << (kpos + 1) << " action " << (i + 1) << " "
              << es.row[kpos][i].tidied(16 + 4 * digits).to_string() << "\n";
        for (size_t j = 0; j < es.col[kpos].size(); ++j)
          out << "strategy II " << (kpos + 1) << " action " << (j + 1) << " "
              << es.col[kpos][j].tidied(16 + 4 * digits).to_string() << "\n";
      }
      smode = "none";
    } catch (const precision_exhausted&) {
      exact_strategy_fallback = true;
      smode = "eps=1/1024";
    }
  }
  if (smode.rfind("eps=", 0) == 0) {
    Rat eps = parse_rat(smode.substr(4));
    std::pair<StationaryStrategy, StationaryStrategy> st;
    if (g.variant == GameVariant::shapley)
      st = eps_optimal_strategy_shapley(g, eps, opts);
    else if (g.variant == GameVariant::everett)
      st = eps_optimal_strategy_everett(g, eps, everett_C, opts);
    else
      throw invalid_input("eps strategies are not provided for gillette games");
    for (int kpos = 0; kpos < g.N; ++kpos) {
      out << "strategy I " << (kpos + 1) << " [";
      for (size_t i = 0; i < st.first.rows[kpos].size(); ++i)
        out << (i ? ", " : "") << rat_to_string(st.first.rows[kpos][i]);
      out << "]\n";
      out << "strategy II " << (kpos + 1) << " [";
      for (size_t j = 0; j < st.second.rows[kpos].size(); ++j)
        out << (j ? ", " : "") << rat_to_string(st.second.rows[kpos][j]);
      out << "]\n";
    }
  }
  out << "audit:\n";
  std::istringstream audit(res.audit.to_text() +
                           (exact_strategy_fallback
                                ? "note exact strategies exhausted precision; eps fallback used\n"
                                : ""));
  std::string line;
  while (std::getline(audit, line)) out << "  " << line << "\n";
  std::cout << out.str();
  return kExitOk;
}

GameDocument make_diagonal_doc(const DiagonalSpec& spec) {
  GameDocument doc;
  doc.game = diagonal_game(spec);
  doc.name = "diagonal";
  std::vector<std::string> alphas;
  for (const Rat& a : spec.alphas) alphas.push_back(rat_to_string(a));
  doc.meta["kind"] = {"diagonal"};
  doc.meta["alphas"] = alphas;
  doc.meta["beta"] = {rat_to_string(spec.beta)};
  if (sign(spec.beta) > 0) {
    Rat c = Rat(1) / spec.beta;
    IntPoly fm = F_m_polynomial(spec.alphas, c);
    std::vector<std::string> coeffs;
    for (const Int& cc : fm.coeffs()) coeffs.push_back(cc.get_str());
    doc.meta["fm_poly"] = coeffs;
  }
  return doc;
}

std::vector<Rat> parse_rat_list(const std::string& csv) {
  std::vector<Rat> out;
  std::string cur;
  std::istringstream is(csv);
  while (std::getline(is, cur, ',')) out.push_back(parse_rat(cur));
  return out;
}

int cmd_generate(const std::string& kind, const std::string& alphas_csv, const std::string& beta_s,
                 const std::vector<std::string>& singles, const std::string& weights_csv, int m,
                 long x, const std::string& c_s, const std::string& outfile) {
  GameDocument doc;
  if (kind == "diagonal") {
    if (alphas_csv.empty() || beta_s.empty())
      throw invalid_input("generate diagonal needs --alphas and --beta");
    DiagonalSpec spec{parse_rat_list(alphas_csv), parse_rat(beta_s)};
    if (m > 0 && static_cast<int>(spec.alphas.size()) != m)
      throw invalid_input("--m disagrees with the number of alphas");
    doc = make_diagonal_doc(spec);
  } else if (kind == "composite") {
    if (singles.empty() || weights_csv.empty())
      throw invalid_input("generate composite needs --single (repeatable) and --weights");
    std::vector<StochasticGame> games;
    std::vector<std::string> single_meta;
    for (const std::string& s : singles) {
      auto colon = s.find(':');
      if (colon == std::string::npos)
        throw invalid_input("--single expects alphas:beta, got '" + s + "'");
      DiagonalSpec spec{parse_rat_list(s.substr(0, colon)), parse_rat(s.substr(colon + 1))};
      games.push_back(diagonal_game(spec));
      single_meta.push_back(s);
    }
    std::vector<long> weights;
    for (const Rat& w : parse_rat_list(weights_csv)) {
      if (w.get_den() != 1 || sign(w) <= 0)
        throw invalid_input("weights must be positive integers");
      weights.push_back(w.get_num().get_si());
    }
    doc.game = composite_game(games, weights);
    doc.name = "composite";
    doc.meta["kind"] = {"composite"};
    doc.meta["singles"] = single_meta;
    std::vector<std::string> wtoks;
    for (long w : weights) wtoks.push_back(std::to_string(w));
    doc.meta["weights"] = wtoks;
  } else if (kind == "specialized") {
    if (m <= 0 || x <= 0 || c_s.empty())
      throw invalid_input("generate specialized needs --m, --x and --c");
    DiagonalSpec spec = specialized_diagonal(m, x, parse_rat(c_s));
    doc = make_diagonal_doc(spec);
    doc.name = "specialized";
    doc.meta["kind"] = {"specialized"};
    doc.meta["x"] = {std::to_string(x)};
  } else {
    throw invalid_input("unknown generator kind '" + kind + "'");
  }
  std::string text = emit_game_document(doc);
  if (outfile.empty() || outfile == "-")
    std::cout << text;
  else
    save_game_file(outfile, doc);
  return kExitOk;
}

int cmd_bounds(int N, int m, long tau, long j, long d, long n, long mpolys, const std::string& Hs,
               long C) {
  std::ostringstream out;
  if (N > 0 && m > 0 && tau > 0) {
    BoundProfile p = shapley_bounds(N, m, tau);
    out << "shapley degree_bound " << p.degree_bound << "\n";
    out << "shapley height_bitsize " << p.height_bitsize_bound << "\n";
    out << "shapley sep_exponent j=" << j << " " << p.sep_exponent(j) << "\n";
    BoundProfile e = everett_bounds(N, m, tau, C);
    out << "everett degree_bound " << e.degree_bound << "\n";
    out << "everett height_bitsize " << e.height_bitsize_bound << "\n";
    out << "everett sep_exponent j=" << j << " " << e.sep_exponent(j) << "\n";
    BoundProfile gi = gillette_bounds(N, m, tau, C);
    out << "gillette degree_bound " << gi.degree_bound << "\n";
    out << "gillette height_bitsize " << gi.height_bitsize_bound << "\n";
    out << "gillette sep_exponent j=" << j << " " << gi.sep_exponent(j) << "\n";
  }
  if (d > 0 && !Hs.empty()) {
    Int H;
    if (mpz_set_str(H.get_mpz_t(), Hs.c_str(), 10) != 0 || H < 1)
      throw invalid_input("malformed height bound '" + Hs + "'");
    out << "kll_precision " << kll_precision(d, H) << "\n";
  }
  if (d > 0 && n > 0) {
    IsolatedRootBounds ib = isolated_root_bounds(d, n, std::max(1L, mpolys), std::max(1L, tau));
    out << "isolated degree_bound " << ib.degree_bound.get_str() << "\n";
    out << "isolated coeff_bitsize " << ib.coeff_bitsize.get_str() << "\n";
    out << "isolated root_lower_exponent " << ib.root_lower_exponent.get_str() << "\n";
    out << "isolated separation_exponent " << ib.separation_exponent.get_str() << "\n";
  }
  if (d > 0 && tau > 0) {
    auto [cd, cb] = convert_bounds(d, tau);
    out << "convert degree " << cd << " bitsize " << cb << "\n";
  }
  std::cout << out.str();
  return kExitOk;
}

int cmd_verify(const std::string& path) {
  GameDocument doc = load_game_file(path);
  const StochasticGame& g = doc.game;
  bool all_ok = true;
  std::ostringstream out;
  auto report = [&](const std::string& name, int state) {  // 1 pass, 0 fail, -1 n/a
    out << "check " << name << " " << (state == 1 ? "pass" : state == 0 ? "fail" : "n/a") << "\n";
    if (state == 0) all_ok = false;
  };
  report("validate", 1);  // load_game_file validates

  // duality certificates of the local games at the zero valuation
  {
    bool ok = true;
    std::vector<Rat> zero(g.N, Rat(0));
    try {
      for (int k = 0; k < g.N && ok; ++k) {
        if (g.variant == GameVariant::gillette) break;
        GameSolution s = solve(local_game(g, k, zero));
        ok = s.certificate_holds(local_game(g, k, zero));
      }
    } catch (const std::exception&) {
      ok = false;
    }
    report("local_duality", g.variant == GameVariant::gillette ? -1 : (ok ? 1 : 0));
  }

  // fixed-point residual of the oracle (shapley only)
  if (g.variant == GameVariant::shapley) {
    long k = 24;
    auto [gn, scale] = normalize(g);
    (void)scale;
    std::vector<Rat> v = value_iterate_oracle(gn, k);
    std::vector<Rat> tv = apply_T(gn, v);
    bool ok = true;
    for (int i = 0; i < g.N; ++i)
      if (abs(tv[i] - v[i]) > pow2_rat(-k + 1)) ok = false;
    report("oracle_fixed_point", ok ? 1 : 0);
  } else {
    report("oracle_fixed_point", -1);
  }

  // metadata-backed diagonal checks
  auto kind = doc.meta.find("kind");
  bool is_diagonal = kind != doc.meta.end() && !kind->second.empty() &&
                     (kind->second[0] == "diagonal" || kind->second[0] == "specialized");
  if (is_diagonal && g.variant == GameVariant::shapley && doc.meta.count("fm_poly") &&
      doc.meta.count("alphas") && doc.meta.count("beta")) {
    std::vector<Rat> alphas;
    for (const std::string& s : doc.meta.at("alphas")) alphas.push_back(parse_rat(s));
    Rat beta = parse_rat(doc.meta.at("beta")[0]);
    std::vector<Int> fmc;
    for (const std::string& tok : doc.meta.at("fm_poly")) {
      Int c;
      if (mpz_set_str(c.get_mpz_t(), tok.c_str(), 10) != 0)
        throw invalid_input("malformed fm_poly coefficient '" + tok + "'");
      fmc.push_back(std::move(c));
    }
    IntPoly fm_file(std::move(fmc));
    try {
      SolveResult r = solve_shapley_exact(g);
      bool divides = IntPoly::divide_exact(fm_file, r.values[0].defining_poly()).has_value();
      report("fm_divisibility", divides ? 1 : 0);
      // eq.(5) residual over the refined isolating interval
      AlgebraicNumber v = r.values[0].refined(64);
      Rat lo_acc(0), hi_acc(0);
      bool pos = sign(v.lo()) > 0;
      for (const Rat& al : alphas) {
        lo_acc += v.lo() / (al + beta * v.lo());
        hi_acc += v.hi() / (al + beta * v.hi());
      }
      report("eq5_residual", pos && lo_acc <= 1 && 1 <= hi_acc ? 1 : 0);
    } catch (const std::exception&) {
      report("fm_divisibility", 0);
      report("eq5_residual", 0);
    }
  } else {
    report("fm_divisibility", -1);
    report("eq5_residual", -1);
  }

  // C1/C2 certificates (everett only)
  if (g.variant == GameVariant::everett) {
    try {
      auto [gn, scale] = normalize(g);
      (void)scale;
      std::vector<Rat> v1 = everett_c1_point(gn, Rat(1, 256), 2);
      report("c1_certificate", in_C1(gn, v1) ? 1 : 0);
      StochasticGame gm = mirror_everett(gn);
      std::vector<Rat> v2m = everett_c1_point(gm, Rat(1, 256), 2);
      report("c2_certificate", in_C1(gm, v2m) ? 1 : 0);
    } catch (const std::exception&) {
      report("c1_certificate", 0);
      report("c2_certificate", 0);
    }
  } else {
    report("c1_certificate", -1);
    report("c2_certificate", -1);
  }

  std::cout << out.str();
  return all_ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver for Shapley, Everett and Gillette stochastic games"};
  app.require_subcommand(1);

  std::string path, variant_override, strategies, outfile;
  long everett_C = 2, gillette_C = 2, approx_only = 0;
  int digits = 6;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a game file exactly");
  solve_cmd->add_option("file", path)->required();
  solve_cmd->add_option("--variant-override", variant_override);
  solve_cmd->add_option("--everett-constant", everett_C);
  solve_cmd->add_option("--gillette-constant", gillette_C);
  solve_cmd->add_option("--strategies", strategies, "none | eps=R | exact");
  solve_cmd->add_option("--digits", digits);
  solve_cmd->add_option("--approx-only", approx_only, "dyadic approximation at 2^-k only");

  std::string kind, alphas_csv, beta_s, weights_csv, c_s;
  std::vector<std::string> singles;
  int gen_m = 0;
  long gen_x = 0;
  CLI::App* gen_cmd = app.add_subcommand("generate", "emit a test instance");
  gen_cmd->add_option("kind", kind, "diagonal | composite | specialized")->required();
  gen_cmd->add_option("--alphas", alphas_csv);
  gen_cmd->add_option("--beta", beta_s);
  gen_cmd->add_option("--single", singles, "alphas:beta (repeatable)");
  gen_cmd->add_option("--weights", weights_csv);
  gen_cmd->add_option("--m", gen_m);
  gen_cmd->add_option("--x", gen_x);
  gen_cmd->add_option("--c", c_s);
  gen_cmd->add_option("-o,--output", outfile);

  int bN = 0, bm = 0;
  long btau = 0, bj = 0, bd = 0, bn = 0, bmp = 1, bC = 2;
  std::string bH;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "print the bound calculators");
  bounds_cmd->add_option("--N", bN);
  bounds_cmd->add_option("--m", bm);
  bounds_cmd->add_option("--tau", btau);
  bounds_cmd->add_option("--j", bj);
  bounds_cmd->add_option("--d", bd);
  bounds_cmd->add_option("--n", bn);
  bounds_cmd->add_option("--mpolys", bmp);
  bounds_cmd->add_option("--H", bH);
  bounds_cmd->add_option("--C", bC);

  std::string verify_path;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the instance invariant battery");
  verify_cmd->add_option("file", verify_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed())
      return cmd_solve(path, variant_override, everett_C, gillette_C, strategies, digits,
                       approx_only);
    if (gen_cmd->parsed())
      return cmd_generate(kind, alphas_csv, beta_s, singles, weights_csv, gen_m, gen_x, c_s,
                          outfile);
    if (bounds_cmd->parsed()) return cmd_bounds(bN, bm, btau, bj, bd, bn, bmp, bH, bC);
    if (verify_cmd->parsed()) return cmd_verify(verify_path);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const reconstruction_error& e) {
    std::cerr << "error: " << e.what() << " (best candidate " << e.best_candidate.to_string()
              << ")\n";
    return kExitPrecision;
  } catch (const precision_exhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const verification_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
