#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "tauq/run.hpp"

using namespace tauq;

namespace {

std::string data_file(const std::string& name) {
  return std::string(TAUQ_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunOptions options(const std::string& command, const std::string& module = "") {
  RunOptions opt;
  opt.command = command;
  opt.module_name = module;
  return opt;
}

}  // namespace

TEST_CASE("the A2 file round-trips to the fixtures") {
  auto ws = parse_workspace(slurp(data_file("a2.tauq")));
  REQUIRE(ws.field_p == 0);
  REQUIRE(ws.vertices == std::vector<std::string>{"1", "2"});
  REQUIRE(ws.arrows.size() == 1);
  auto typed = instantiate<Rational>(ws, Rational(1));
  REQUIRE(typed.algebra->dim() == 3);
  REQUIRE(typed.modules.size() == 3);
  REQUIRE(typed.modules[2].second->dims() == std::vector<std::size_t>{1, 1});
}

TEST_CASE("print-parse round trip is the identity on canonical forms") {
  for (const std::string name :
       {"a2.tauq", "a3_bound.tauq", "a3_hereditary.tauq", "kronecker.tauq",
        "loop_cube.tauq", "loop_square.tauq", "window_fp.tauq", "window_fdim.tauq",
        "a2_f5.tauq"}) {
    INFO(name);
    auto ws = parse_workspace(slurp(data_file(name)));
    const std::string canonical = print_workspace(ws);
    REQUIRE(print_workspace(parse_workspace(canonical)) == canonical);
  }
}

TEST_CASE("the loop file builds the cube-relation algebra") {
  auto ws = parse_workspace(slurp(data_file("loop_cube.tauq")));
  auto typed = instantiate<Rational>(ws, Rational(1));
  REQUIRE(typed.algebra->dim() == 3);
  REQUIRE(typed.algebra->status().kind == AlgebraStatus::Kind::stabilized);
}

TEST_CASE("parse errors carry locations") {
  REQUIRE_THROWS_AS(parse_workspace("field Q\nvertex x\narrow a x -> x\n"), parse_error);
  try {
    parse_workspace("field Q\nvertex x\nzebra\n");
    FAIL("expected parse error");
  } catch (const parse_error& e) {
    REQUIRE(e.line == 3);
  }
  // Non-prime field order.
  REQUIRE_THROWS_AS(parse_workspace("field F 6\n"), parse_error);
}

TEST_CASE("relation validation errors carry locations") {
  // Non-parallel monomials.
  const std::string text =
      "field Q\nvertex 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation b*a + a*b\n";
  auto ws = parse_workspace(text);
  try {
    instantiate<Rational>(ws, Rational(1));
    FAIL("expected parallelism error");
  } catch (const parse_error& e) {
    REQUIRE(e.line == 5);
  }
  // Length-1 monomial.
  auto ws2 = parse_workspace("field Q\nvertex 1 2\narrow a: 1 -> 2\nrelation a\n");
  REQUIRE_THROWS_AS(instantiate<Rational>(ws2, Rational(1)), parse_error);
  // Non-composable monomial.
  auto ws3 = parse_workspace("field Q\nvertex 1 2\narrow a: 1 -> 2\nrelation a*a\n");
  REQUIRE_THROWS_AS(instantiate<Rational>(ws3, Rational(1)), parse_error);
}

TEST_CASE("build command reports basis and status") {
  auto ws = parse_workspace(slurp(data_file("a2.tauq")));
  auto res = run_command(ws, options("build"));
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.json["dim"] == 3);
  REQUIRE(res.json["algebra_status"] == "nilpotent-verified(2)");
}

TEST_CASE("undecided algebras exit with code 2") {
  // A free loop never saturates.
  auto ws = parse_workspace("field Q\nvertex x\narrow a: x -> x\n");
  RunOptions opt = options("build");
  opt.build_caps = {8, 8};
  auto res = run_command(ws, opt);
  REQUIRE(res.exit_code == 2);
  REQUIRE(res.json["status"] == "undecided");
  // classify likewise refuses to silently degrade.
  RunOptions copt = options("classify");
  copt.build_caps = {8, 8};
  REQUIRE(run_command(ws, copt).exit_code == 2);
}

TEST_CASE("classify on the loop file finds the witness") {
  auto ws = parse_workspace(slurp(data_file("loop_cube.tauq")));
  auto res = run_command(ws, options("classify"));
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.json["locally_semiperfect"] == "false");
  REQUIRE(res.json["semiperfect_witness"] == "a*a");
  REQUIRE(res.json["locally_left_bounded"] == "true");
}

TEST_CASE("conclusions command") {
  auto ws = parse_workspace(slurp(data_file("a3_bound.tauq")));
  auto res = run_command(ws, options("conclusions"));
  REQUIRE(res.exit_code == 0);
  bool fp_left = false;
  for (const auto& c : res.json["conclusions"]) {
    REQUIRE(c["status"] == "true");
    if (c["id"] == "fp_left") fp_left = true;
  }
  REQUIRE(fp_left);
  // The loop algebra yields no conclusions.
  auto loop = parse_workspace(slurp(data_file("loop_cube.tauq")));
  auto res2 = run_command(loop, options("conclusions"));
  REQUIRE(res2.json["conclusions"].empty());
}

TEST_CASE("tau on a projective notes the zero result") {
  auto ws = parse_workspace(slurp(data_file("a2.tauq")));
  auto res = run_command(ws, options("tau", "P1"));
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.json["total_dim"] == 0);
  REQUIRE(res.json["note"] == "projective input, tau = 0");
}

TEST_CASE("tau of S1 over A2 is S2") {
  auto ws = parse_workspace(slurp(data_file("a2.tauq")));
  auto res = run_command(ws, options("tau", "S1"));
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.json["isomorphic_to"] == "S2");
}

TEST_CASE("ass command reproduces the verified A2 sequence") {
  auto ws = parse_workspace(slurp(data_file("a2.tauq")));
  RunOptions opt = options("ass", "S1");
  opt.verify = true;
  opt.probes = "all";
  auto res = run_command(ws, opt);
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.json["start_isomorphic_to"] == "S2");
  REQUIRE(res.json["middle_isomorphic_to"] == "P1");
  REQUIRE(res.json["split"] == false);
  REQUIRE(res.json["verification"]["all_pass"] == true);
}

TEST_CASE("ass refuses projectives with an explanation") {
  auto ws = parse_workspace(slurp(data_file("a2.tauq")));
  auto res = run_command(ws, options("ass", "P1"));
  REQUIRE(res.exit_code == 1);
  REQUIRE(res.json["status"] == "error");
  std::string msg = res.json["message"];
  REQUIRE(msg.find("ext-projective") != std::string::npos);
}

TEST_CASE("duality-check over A2") {
  auto ws = parse_workspace(slurp(data_file("a2.tauq")));
  RunOptions opt = options("duality-check", "S1");
  opt.probes = "S1,S2,P1";
  auto res = run_command(ws, opt);
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.json["all_ok"] == true);
  REQUIRE(res.json["rows"].size() == 3);
}

TEST_CASE("dualize emits a parsable opposite workspace") {
  auto ws = parse_workspace(slurp(data_file("a2.tauq")));
  auto res = run_command(ws, options("dualize", "P1"));
  REQUIRE(res.exit_code == 0);
  auto op = parse_workspace(res.json["opposite_workspace"]);
  REQUIRE(op.arrows[0].src == "2");
  REQUIRE(op.arrows[0].tgt == "1");
  auto typed = instantiate<Rational>(op, Rational(1));
  REQUIRE(typed.modules.size() == 1);
  REQUIRE(typed.modules[0].first == "D_P1");
}

TEST_CASE("window safety stamps boundary-supported computations") {
  auto ws = parse_workspace(slurp(data_file("window_fp.tauq")));
  // S6 sits on the boundary: its cover P6 is boundary-supported.
  auto res = run_command(ws, options("tau", "S6"));
  REQUIRE(res.exit_code == 2);
  REQUIRE(res.json["window_unsafe"] == true);
  // S0 lives deep in the interior; all projectives and injectives involved
  // avoid the boundary.
  auto res2 = run_command(ws, options("tau", "S0"));
  REQUIRE(res2.exit_code == 0);
  REQUIRE(!res2.json.contains("window_unsafe"));
}

TEST_CASE("machine output is byte-stable across runs") {
  auto ws = parse_workspace(slurp(data_file("a3_bound.tauq")));
  RunOptions opt = options("ass", "S2");
  opt.verify = true;
  opt.seed = 7;
  auto a = run_command(ws, opt);
  auto b = run_command(ws, opt);
  REQUIRE(a.json.dump() == b.json.dump());
  REQUIRE(a.text == b.text);
}

TEST_CASE("prime field workspaces run end to end") {
  auto ws = parse_workspace(slurp(data_file("a2_f5.tauq")));
  RunOptions opt = options("ass", "S1");
  opt.verify = true;
  auto res = run_command(ws, opt);
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.json["verification"]["all_pass"] == true);
}

TEST_CASE("tau with an explicit presentation file") {
  auto ws = parse_workspace(slurp(data_file("a2.tauq")));
  // Pad the minimal presentation of S1 = coker(P2 -> P1) by a zero column
  // from P2: tau_delta S1 = tau S1 + I2.
  const std::string path = std::string(TAUQ_DATA_DIR) + "/../build/pres_s1_padded.txt";
  {
    std::ofstream out(path);
    out << "# padded presentation of S1 over A2\n";
    out << "source 2 2\n";
    out << "target 1\n";
    out << "entry 0 0 a\n";
    out << "entry 0 1 0\n";
  }
  RunOptions opt = options("tau", "S1");
  opt.presentation = path;
  auto res = run_command(ws, opt);
  REQUIRE(res.exit_code == 0);
  // tau S1 + I2 has dimension vector (1,1) + (0,1)... I2 = (1,1), S2 = (0,1):
  // total (1,2).
  REQUIRE(res.json["total_dim"] == 3);
}
