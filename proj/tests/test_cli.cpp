// End-to-end checks of the command line tool, driven through the shell.
// argv[1] is the path to the sgsolve binary.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "sgsolve/gamefile.hpp"
#include "sgsolve/numeric.hpp"

namespace {
std::string g_binary;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = g_binary + " " + args + " 2>&1";
  std::array<char, 4096> buf;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("generate then solve the diagonal instance") {
  std::string path = tmp_path("diag1.game");
  RunResult gen = run("generate diagonal --alphas 1/4 --beta 1/2 -o " + path);
  CHECK(gen.exit_code == 0);
  RunResult sol = run("solve " + path + " --digits 4 --strategies none");
  CHECK(sol.exit_code == 0);
  CHECK(sol.out.find("value 1 polynomial [-1, 2]") != std::string::npos);
  CHECK(sol.out.find("value 1 interval [1/2, 1/2]") != std::string::npos);
  CHECK(sol.out.find("value 1 decimal 0.5000 (exact)") != std::string::npos);
}

TEST_CASE("approx-only mode") {
  std::string path = tmp_path("diag1b.game");
  run("generate diagonal --alphas 1/4 --beta 1/2 -o " + path);
  RunResult sol = run("solve " + path + " --approx-only 10");
  CHECK(sol.exit_code == 0);
  // within 2^-10 of 1/2
  auto pos = sol.out.find("approx 1 ");
  REQUIRE(pos != std::string::npos);
  std::string rest = sol.out.substr(pos + 9);
  std::string tok = rest.substr(0, rest.find('\n'));
  sgsolve::Rat v = sgsolve::parse_rat(tok);
  CHECK(abs(v - sgsolve::Rat(1, 2)) <= sgsolve::pow2_rat(-10));
}

TEST_CASE("malformed rational exits with code 2 naming the cell") {
  std::string path = tmp_path("bad.game");
  std::ofstream f(path);
  f << "game shapley\npositions 1\nposition 1 1 1\ncell 1 1 1 1/0 0 1/2 1/2\nend\n";
  f.close();
  RunResult sol = run("solve " + path);
  CHECK(sol.exit_code == 2);
  CHECK(sol.out.find("cell (1,1)") != std::string::npos);
}

TEST_CASE("bounds subcommand prints the pinned values") {
  RunResult b = run("bounds --N 2 --m 2 --tau 1");
  CHECK(b.exit_code == 0);
  CHECK(b.out.find("shapley degree_bound 81") != std::string::npos);
  CHECK(b.out.find("shapley height_bitsize 3024") != std::string::npos);
  RunResult k = run("bounds --d 2 --H 24");
  CHECK(k.out.find("kll_precision 37") != std::string::npos);
  RunResult ir = run("bounds --d 2 --n 1 --tau 1");
  CHECK(ir.out.find("isolated degree_bound 5") != std::string::npos);
}

TEST_CASE("verify passes on generated files and fails on corrupted metadata") {
  std::string path = tmp_path("diag2.game");
  run("generate diagonal --alphas 1/8,1/4 --beta 1/2 -o " + path);
  RunResult ok = run("verify " + path);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("check fm_divisibility pass") != std::string::npos);
  CHECK(ok.out.find("check eq5_residual pass") != std::string::npos);

  // corrupt the declared polynomial
  sgsolve::GameDocument doc = sgsolve::load_game_file(path);
  doc.meta["fm_poly"] = {"1", "1", "7"};
  sgsolve::save_game_file(path, doc);
  RunResult bad = run("verify " + path);
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("check fm_divisibility fail") != std::string::npos);
}

TEST_CASE("verify marks C1/C2 n/a for shapley files and runs them for everett") {
  std::string path = tmp_path("diag3.game");
  run("generate diagonal --alphas 1/4 --beta 1/2 -o " + path);
  RunResult sh = run("verify " + path);
  CHECK(sh.out.find("check c1_certificate n/a") != std::string::npos);

  // hand-written everett file
  std::string epath = tmp_path("ev.game");
  std::ofstream f(epath);
  f << "game everett\npositions 1\nposition 1 1 1\ncell 1 1 1 0 1/2 1/2 1/2\nend\n";
  f.close();
  RunResult ev = run("verify " + epath);
  CHECK(ev.exit_code == 0);
  CHECK(ev.out.find("check c1_certificate pass") != std::string::npos);
  CHECK(ev.out.find("check c2_certificate pass") != std::string::npos);
}

TEST_CASE("everett solve emits eps strategies by default") {
  std::string epath = tmp_path("ev2.game");
  std::ofstream f(epath);
  f << "game everett\npositions 1\nposition 1 1 1\ncell 1 1 1 0 1/2 1/2 1/2\nend\n";
  f.close();
  RunResult sol = run("solve " + epath + " --digits 4");
  CHECK(sol.exit_code == 0);
  CHECK(sol.out.find("value 1 polynomial [-1, 2]") != std::string::npos);
  CHECK(sol.out.find("strategy I 1 [1]") != std::string::npos);
  CHECK(sol.out.find("stability protocol") != std::string::npos);
}

TEST_CASE("precision ceiling environment variable caps reconstruction") {
  std::string path = tmp_path("diag6.game");
  run("generate diagonal --alphas 1/8,1/4 --beta 1/2 -o " + path);
  std::string saved = g_binary;
  g_binary = "SGSOLVE_PRECISION_CEILING=100 " + saved;
  RunResult sol = run("solve " + path);
  g_binary = saved;
  CHECK(sol.exit_code == 3);
  CHECK(sol.out.find("ceiling") != std::string::npos);
}

TEST_CASE("solve output is deterministic") {
  std::string path = tmp_path("diag4.game");
  run("generate diagonal --alphas 1/8,1/4 --beta 1/2 -o " + path);
  RunResult a = run("solve " + path + " --digits 6");
  RunResult b = run("solve " + path + " --digits 6");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("decimal output lies within the emitted interval") {
  std::string path = tmp_path("diag5.game");
  run("generate diagonal --alphas 1/8,1/4 --beta 1/2 -o " + path);
  RunResult sol = run("solve " + path + " --digits 10 --strategies none");
  auto ipos = sol.out.find("interval [");
  REQUIRE(ipos != std::string::npos);
  auto comma = sol.out.find(", ", ipos);
  auto close = sol.out.find("]", comma);
  sgsolve::Rat lo = sgsolve::parse_rat(sol.out.substr(ipos + 10, comma - ipos - 10));
  sgsolve::Rat hi = sgsolve::parse_rat(sol.out.substr(comma + 2, close - comma - 2));
  auto dpos = sol.out.find("decimal ");
  std::string dec = sol.out.substr(dpos + 8);
  dec = dec.substr(0, dec.find(' '));
  // parse decimal a.b as a rational
  auto dot = dec.find('.');
  std::string digitsonly = dec;
  digitsonly.erase(dot, 1);
  sgsolve::Int num;
  REQUIRE(mpz_set_str(num.get_mpz_t(), digitsonly.c_str(), 10) == 0);
  sgsolve::Rat d(num, sgsolve::pow_int(sgsolve::Int(10), 10));
  d.canonicalize();
  // truncation toward zero: d <= value <= d + 10^-10 for positive values
  CHECK(d <= hi);
  CHECK(d + sgsolve::Rat(1, sgsolve::pow_int(sgsolve::Int(10), 10)) >= lo);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-sgsolve-binary>\n");
    return 1;
  }
  g_binary = argv[1];
  doctest::Context ctx;
  return ctx.run();
}
