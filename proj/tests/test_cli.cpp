#include <cstdio>
#include <fstream>
#include <sstream>

#include "diamond/presentation_file.hpp"
#include "diamond/report.hpp"
#include "doctest.h"

using namespace diamond;

#ifndef PRESET_DIR
#define PRESET_DIR "presets"
#endif
#ifndef DIAMOND_BIN
#define DIAMOND_BIN ""
#endif

namespace {

std::vector<std::string> preset_files() {
  return {"xyz.pres",
          "coxeter-s3-words.pres",
          "coxeter-s3.pres",
          "coxeter-s4-naive.pres",
          "example-2-7.pres",
          "modified-symmetric.pres",
          "nilhecke.pres",
          "webster-sl2-skeleton.pres"};
}

std::string preset_path(const std::string& name) {
  return std::string(PRESET_DIR) + "/" + name;
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(DIAMOND_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("every preset parses and round-trips") {
  for (const auto& name : preset_files()) {
    CAPTURE(name);
    PresentationFile f1 = parse_presentation_file(preset_path(name));
    std::string s1 = serialize_presentation(f1);
    PresentationFile f2 = parse_presentation_string(s1);
    std::string s2 = serialize_presentation(f2);
    CHECK(s1 == s2);
    CHECK(f1.is_word() == f2.is_word());
  }
}

TEST_CASE("parsed word presets validate and have the expected shape") {
  PresentationFile xyz = parse_presentation_file(preset_path("xyz.pres"));
  REQUIRE(xyz.is_word());
  RewriteSystem sys = xyz.word();
  CHECK(validate_system(sys).ok);
  CHECK(sys.rules.size() == 3);
  auto nf = normal_form(sys, LinComb::monomial(parse_word(sys.alphabet, "zyx"),
                                               Scalar(xyz.ws.get(), 1)));
  CHECK(nf.value.terms().size() == 4);

  PresentationFile s4 =
      parse_presentation_file(preset_path("coxeter-s4-naive.pres"));
  RewriteSystem s4sys = s4.word();
  CHECK(validate_system(s4sys).ok);
  CHECK_FALSE(bergman_check(s4sys).bergman_type);
}

TEST_CASE("parsed hecke presets validate") {
  for (const auto& name : {"coxeter-s3.pres", "nilhecke.pres",
                           "modified-symmetric.pres",
                           "webster-sl2-skeleton.pres"}) {
    CAPTURE(name);
    PresentationFile f = parse_presentation_file(preset_path(name));
    REQUIRE_FALSE(f.is_word());
    auto v = validate_presentation(f.hecke());
    CHECK(v.ok);
  }
  // the file-parsed nilhecke behaves like the built-in preset
  PresentationFile nh = parse_presentation_file(preset_path("nilhecke.pres"));
  CHECK(hecke_check(nh.hecke()).all_resolvable);
}

TEST_CASE("malformed files produce line diagnostics") {
  CHECK_THROWS_AS(parse_presentation_string("kind banana\n"), usage_error);
  CHECK_THROWS_AS(parse_presentation_string("version 1\nkind word\n"
                                            "[rules]\nxx -> 1\n"),
                  usage_error);  // no alphabet
  try {
    parse_presentation_string(
        "version 1\nkind word\n[alphabet]\nx\n[rules]\nxq -> 1\n");
    FAIL("expected a parse error");
  } catch (const usage_error& e) {
    CHECK(std::string(e.what()).find(":6:") != std::string::npos);
  }
  // scalar literal errors
  Workspace ws;
  CHECK_THROWS_AS(parse_scalar(&ws, "nosuch", {}, {}), usage_error);
  CHECK(parse_scalar(&ws, "2^3 - 1/2", {}, {}).constant() ==
        Rational(15, 2));
}

TEST_CASE("cli exit codes on the preset corpus") {
  if (std::string(DIAMOND_BIN).empty()) return;
  CHECK(run_cli("check " + preset_path("coxeter-s3.pres")).exit_code == 0);
  CHECK(run_cli("check " + preset_path("xyz.pres")).exit_code == 0);
  CHECK(run_cli("check " + preset_path("nilhecke.pres")).exit_code == 0);
  CHECK(run_cli("check " + preset_path("coxeter-s4-naive.pres")).exit_code ==
        1);
  CHECK(run_cli("check " + preset_path("example-2-7.pres")).exit_code == 1);
  CHECK(run_cli("check /nonexistent.pres").exit_code == 2);

  // malformed file: exit 2
  std::string bad = "/tmp/diamond-bad.pres";
  std::ofstream(bad) << "kind word\n[alphabet\nx\n";
  CHECK(run_cli("check " + bad).exit_code == 2);
  std::remove(bad.c_str());
}

TEST_CASE("reports are byte-identical across runs and job counts") {
  if (std::string(DIAMOND_BIN).empty()) return;
  std::string args = "check " + preset_path("coxeter-s4-naive.pres");
  RunResult r1 = run_cli(args);
  RunResult r2 = run_cli(args);
  RunResult r4 = run_cli(args + " --jobs 4");
  CHECK(r1.out == r2.out);
  CHECK(r1.out == r4.out);

  std::string hargs = "check " + preset_path("nilhecke.pres");
  CHECK(run_cli(hargs).out == run_cli(hargs + " --jobs 3").out);
}

TEST_CASE("cli verbs") {
  if (std::string(DIAMOND_BIN).empty()) return;
  RunResult order = run_cli("ms order tst sts");
  CHECK(order.exit_code == 0);
  CHECK(order.out.find("\"order\": \"LT\"") != std::string::npos);

  RunResult sink = run_cli("ms sink ss --n 2");
  CHECK(sink.out.find("\"sink\": \"e\"") != std::string::npos);

  RunResult graph = run_cli("ms graph --w 4321 --quotient --orient");
  CHECK(graph.exit_code == 0);
  // 8 vertices: v0..v7 present, no v8
  CHECK(graph.out.find("v7 [") != std::string::npos);
  CHECK(graph.out.find("v8 [") == std::string::npos);

  RunResult nf = run_cli("normal-form " + preset_path("xyz.pres") +
                         " --word zyx");
  CHECK(nf.out.find("\"word\": \"xyz\"") != std::string::npos);

  RunResult comp = run_cli("complete " + preset_path("example-2-7.pres"));
  CHECK(comp.exit_code == 0);
  CHECK(comp.out.find("\"confluent\": true") != std::string::npos);
  CHECK(comp.out.find("tstst") != std::string::npos);

  RunResult basis =
      run_cli("basis " + preset_path("coxeter-s3.pres") +
              " --source \"i i i\" --target \"i i i\"");
  CHECK(basis.exit_code == 0);
  CHECK(basis.out.find("\"rank_over_dots\": 6") != std::string::npos);

  // conditions on a word system is a usage error
  CHECK(run_cli("conditions " + preset_path("xyz.pres")).exit_code == 2);

  // condition sets: empty for the certified presets, deterministic under
  // concurrency for the symbolic one
  RunResult cs3 = run_cli("conditions " + preset_path("coxeter-s3.pres"));
  CHECK(cs3.out.find("\"generators\": []") != std::string::npos);
  RunResult cnh = run_cli("conditions " + preset_path("nilhecke.pres"));
  CHECK(cnh.out.find("\"generators\": []") != std::string::npos);
  std::string margs = "conditions " + preset_path("modified-symmetric.pres");
  CHECK(run_cli(margs).out == run_cli(margs + " --jobs 3").out);
}
