#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sigchev/cli.hpp"

using namespace sigchev;
using namespace sigchev::cli;

namespace {

ParseError parse_failure(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("parsed: " << text);
  throw;
}

RunResult run_text(const std::string& text, bool assert_mode = false, std::uint64_t seed = 1) {
  RunOptions o;
  o.assert_mode = assert_mode;
  o.seed = seed;
  return run_scenario(parse_scenario(text), o);
}

}  // namespace

TEST_CASE("parse: small scenario") {
  const auto s = parse_scenario("field F = Q; pseudofield K = trivial(F, 3); cmd decompose K;");
  CHECK(s.decls.size() == 2);
  REQUIRE(s.commands.size() == 1);
  CHECK(s.commands[0].op == "decompose");
  CHECK(std::get<PseudoDecl>(s.decls[1].body).period == 3);
}

TEST_CASE("parse: errors carry kind and position") {
  auto e = parse_failure("cmd lift undeclared_ideal;");
  CHECK(e.kind() == ErrorKind::UnknownName);
  CHECK(e.line() == 1);
  CHECK(e.column() == 10);

  e = parse_failure("field F = Q;\nring R = F[u] sigma id (u -> u +);");
  CHECK(e.kind() == ErrorKind::SyntaxError);
  CHECK(e.line() == 2);
  CHECK(e.column() == 33);
  CHECK(e.detail().find("expected") != std::string::npos);

  e = parse_failure("field F = Q;\ncmd decompose F;");
  CHECK(e.kind() == ErrorKind::TypeMismatch);
  CHECK(e.line() == 2);

  e = parse_failure("field F = Q;\nring R = F[u] sigma id (u -> v);");
  CHECK(e.kind() == ErrorKind::UnknownName);

  e = parse_failure("field F = Q; field F = GF(2);");
  CHECK(e.kind() == ErrorKind::TypeMismatch);

  e = parse_failure("field F = Q; pseudofield P = trivial(F, 1); kernel k over P vars (x) length 1 = (s2(x));");
  CHECK(e.kind() == ErrorKind::TypeMismatch);

  e = parse_failure("field F = Q; pseudofield P = trivial(F, 2); kernel k over P vars (x) length 0 = (x);");
  CHECK(e.kind() == ErrorKind::TypeMismatch);

  e = parse_failure("field F = Q; pseudofield P = trivial(F, 1); cmd decompose P bogus 3;");
  CHECK(e.kind() == ErrorKind::TypeMismatch);

  e = parse_failure("field F = Q; pseudofield P = trivial(F, 1); cmd realize P;");
  CHECK(e.kind() == ErrorKind::TypeMismatch);

  e = parse_failure("expect a = 1;");
  CHECK(e.kind() == ErrorKind::SyntaxError);

  e = parse_failure("field F = Q;\nfield G = F[r]/(r^2 - 2)\nfield H = Q;");
  CHECK(e.kind() == ErrorKind::SyntaxError);
  CHECK(e.line() == 3);

  e = parse_failure("field F = Q; ring R = F[u] sigma id (u -> u); ring S = F[x] sigma id (x -> x);\n"
                    "inclusion N: R -> S (u -> x^2); ideal I in S = (x); cmd lift N, I;");
  CHECK(e.kind() == ErrorKind::TypeMismatch);
}

TEST_CASE("builtins: names, descriptions, unknown name") {
  const std::vector<std::string> expected = {"frobenius-compat", "intro-example", "inversive-bijection", "kernel-tower",
                                             "limit-degree",     "pv-sqrt",       "statement-a",         "trivial-ext"};
  std::vector<std::string> names;
  for (const auto& b : builtins()) {
    names.push_back(b.name);
    CHECK(!b.description.empty());
  }
  CHECK(names == expected);
  try {
    builtin("no-such-scenario");
    FAIL("unknown builtin accepted");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::UnknownName);
  }
  const auto intro = parse_scenario(builtin("intro-example").text);
  CHECK(intro.commands.size() == 4);
  CHECK(intro.commands[0].op == "lift");
}

TEST_CASE("render: parse after render is the identity on canonical scenarios") {
  for (const auto& b : builtins()) {
    const Scenario s = parse_scenario(b.text);
    const std::string canon = render_scenario(s);
    const Scenario back = parse_scenario(canon);
    CHECK_MESSAGE(back == s, b.name);
    CHECK(render_scenario(back) == canon);
  }
}

TEST_CASE("render: round trip on generated scenarios") {
  std::mt19937_64 rng(20261017);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  const std::vector<std::string> polys = {"u - 2", "u^2 + 3*u", "(u - r)*(u + r)", "u*v - 1/3", "v^3 - r*u", "2", "-u"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text = "# generated " + std::to_string(trial) + "\nfield F = Q;\n";
    const bool alg = pick(2);
    const std::string k = alg ? "K" : "F";
    if (alg) text += "field K = F[r]/(r^2 - " + std::to_string(2 + pick(3) * 3) + ");\nsigma c on K: r -> -r;\n";
    const std::string sig = alg && pick(2) ? "c" : "id";
    text += "ring R = " + k + "[u, v] sigma " + sig + " (v -> " + (pick(2) ? "v" : "-v") + ", u -> u)";
    if (pick(2)) text += " mod (u*v - 1)";
    text += ";\n";
    const int nideals = 1 + pick(3);
    for (int i = 0; i < nideals; ++i) {
      std::string p = polys[static_cast<std::size_t>(pick(static_cast<int>(polys.size())))];
      if (!alg) p = p.find('r') != std::string::npos ? "u + 1" : p;
      text += "ideal I" + std::to_string(i) + " in R = (" + p + ")" + (pick(2) ? " period " + std::to_string(1 + pick(3)) : "") +
              ";\n";
    }
    text += "pseudofield P = trivial(" + k + ", " + std::to_string(1 + pick(4)) + ");\n";
    const int ncmd = pick(4);
    for (int i = 0; i < ncmd; ++i) {
      if (pick(2)) text += "cmd stability I" + std::to_string(pick(nideals)) + " power " + std::to_string(1 + pick(3)) + ";\n";
      else text += "cmd decompose P samples " + std::to_string(pick(50)) + ";\n";
      if (pick(2)) text += "expect a.b." + std::to_string(pick(4)) + " = [1, \"x\", null, true];\n";
    }
    const Scenario s = parse_scenario(text);
    const std::string canon = render_scenario(s);
    REQUIRE_MESSAGE(parse_scenario(canon) == s, canon);
  }
}

TEST_CASE("run: empty command list gives an empty passing report") {
  const auto r = run_text("field F = Q;", true);
  CHECK(r.exit_code == 0);
  CHECK(r.report["passed"] == true);
  CHECK(r.report["commands"].empty());
  CHECK(validate_report(r.report).empty());
  CHECK(run_text("").report["schema_version"] == 1);
}

TEST_CASE("run: operation errors are recorded per command") {
  const std::string text =
      "field F = Q; pseudofield P = trivial(F, 1);\n"
      "kernel bad over P vars (x) length 1 = (x - 1, s1(x) - 2);\n"
      "kernel good over P vars (x) length 0 = (x^2 - 2);\n"
      "cmd prolong bad;\n"
      "cmd prolong good;\n";
  auto r = run_text(text);
  CHECK(r.exit_code == 3);
  const auto& cmds = r.report["commands"];
  CHECK(cmds[0]["status"] == "error");
  CHECK(cmds[0]["error"]["kind"] == "ConditionOneFails");
  CHECK(cmds[1]["status"] == "ok");
  CHECK(cmds[1]["result"]["length"] == 1);
  CHECK(validate_report(r.report).empty());

  r = run_text(text + "expect length = 1;\n", true);
  CHECK(r.exit_code == 3);
  // an anticipated error is not an operation failure
  const std::string expected_error =
      "field F = Q; pseudofield P = trivial(F, 1);\n"
      "kernel bad over P vars (x) length 1 = (x - 1, s1(x) - 2);\n"
      "cmd prolong bad;\nexpect error.kind = \"ConditionOneFails\";\n";
  r = run_text(expected_error, true);
  CHECK(r.exit_code == 0);
  CHECK(r.report["passed"] == true);
}

TEST_CASE("run: assertion mode") {
  const std::string text = "field F = Q; pseudofield K = trivial(F, 3); cmd decompose K; expect period = 4;";
  CHECK(run_text(text, true).exit_code == 1);
  CHECK(run_text(text, false).exit_code == 0);
  const auto r = run_text(text, true);
  CHECK(r.report["passed"] == false);
  CHECK(r.report["commands"][0]["expectations"][0]["actual"] == 3);
  CHECK(run_text("field F = Q; pseudofield K = trivial(F, 3); cmd decompose K; expect no.such.path = 1;", true).exit_code == 1);
}

TEST_CASE("run: reports are deterministic and the seed only moves sampling") {
  for (const char* name : {"intro-example", "trivial-ext", "inversive-bijection"}) {
    const auto s = parse_scenario(builtin(name).text);
    RunOptions o;
    o.name = name;
    const auto a = run_scenario(s, o), b = run_scenario(s, o);
    CHECK(strip_timing(a.report).dump() == strip_timing(b.report).dump());
  }
  const auto s = parse_scenario(builtin("trivial-ext").text);
  RunOptions o1, o2;
  o2.seed = 99;
  auto a = strip_timing(run_scenario(s, o1).report), b = strip_timing(run_scenario(s, o2).report);
  CHECK(a["passed"] == true);
  CHECK(b["passed"] == true);
  for (auto* r : {&a, &b}) {
    r->erase("seed");
    for (auto& c : (*r)["commands"])
      if (c["op"] == "decompose") c["result"].erase("zero_divisors");
  }
  CHECK(a == b);
}

TEST_CASE("schema: unknown and missing fields are rejected") {
  const auto r = run_text("field F = Q; pseudofield K = trivial(F, 2); cmd decompose K;").report;
  CHECK(validate_report(r).empty());
  auto extra = r;
  extra["extra"] = 1;
  CHECK(validate_report(extra).find("unknown field 'extra'") != std::string::npos);
  auto inner = r;
  inner["commands"][0]["result"]["surprise"] = true;
  CHECK(!validate_report(inner).empty());
  auto missing = r;
  missing["summary"].erase("errors");
  CHECK(!validate_report(missing).empty());
  auto version = r;
  version["schema_version"] = 2;
  CHECK(!validate_report(version).empty());
  for (const auto& b : builtins()) {
    RunOptions o;
    o.name = b.name;
    if (b.name == "limit-degree" || b.name == "kernel-tower") continue;  // covered by the builtin runs
    CHECK_MESSAGE(validate_report(run_scenario(parse_scenario(b.text), o).report).empty(), b.name);
  }
}

TEST_CASE("run: declaration failures surface in the commands that use them") {
  const auto r = run_text(
      "field F = Q; field G = F[r]/(r^2 - 1); pseudofield P = trivial(G, 1); pseudofield Q1 = trivial(F, 2);\n"
      "cmd decompose P; cmd decompose Q1;");
  CHECK(r.exit_code == 3);
  CHECK(r.report["commands"][0]["error"]["kind"] == "ReduciblePolynomial");
  CHECK(r.report["commands"][1]["status"] == "ok");
}

TEST_CASE("run: statement-a per power") {
  const auto r = run_scenario(parse_scenario(builtin("statement-a").text), RunOptions{});
  const auto& cmds = r.report["commands"];
  for (std::size_t i = 1; i < cmds.size(); i += 2) {
    CHECK(cmds[i]["result"]["lifts_at"]["1"] == 0);
    CHECK(cmds[i]["result"]["lifts_at"]["2"] == 2);
    CHECK(cmds[i]["result"]["minimal_l"] == 2);
  }
}
