// End-to-end tests of the command-line tool, including the documented exit
// codes for the error paths.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "affine_moduli/catalog.hpp"
#include "affine_moduli/document.hpp"

using namespace affine_moduli;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(AFFINE_MODULI_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("catalog then analyze reports the expected summary") {
  const auto doc = temp_file("am_model3d.json", "");
  RunResult c = run("catalog model3d -o " + doc.string());
  REQUIRE(c.exit_code == 0);
  RunResult a = run("analyze -i " + doc.string());
  REQUIRE(a.exit_code == 0);
  CHECK(a.output.find("torsion-free: yes") != std::string::npos);
  CHECK(a.output.find("signature (0,3)") != std::string::npos);
  CHECK(a.output.find("stabilizer dim 0") != std::string::npos);
  CHECK(a.output.find("generic: yes") != std::string::npos);
}

TEST_CASE("analyze of the block-diagonal-signature structure") {
  const auto doc = temp_file("am_f4a.json", "");
  REQUIRE(run("catalog family4a -o " + doc.string()).exit_code == 0);
  RunResult a = run("analyze -i " + doc.string());
  REQUIRE(a.exit_code == 0);
  CHECK(a.output.find("signature (1,2)") != std::string::npos);
}

TEST_CASE("analyze of the zero tensor reports degeneracy") {
  const TensorDocument zero = from_christoffel(Christoffel(3));
  const auto doc = temp_file("am_zero.json", emit(zero));
  RunResult a = run("analyze -i " + doc.string());
  REQUIRE(a.exit_code == 0);
  CHECK(a.output.find("degenerate Ricci") != std::string::npos);
  CHECK(a.output.find("generic: no") != std::string::npos);
}

TEST_CASE("catalog emits a parseable document with metadata") {
  RunResult r = run("catalog gamma2 -o -");
  REQUIRE(r.exit_code == 0);
  const TensorDocument doc = parse(r.output);
  CHECK(doc.m == 2);
  CHECK(doc.metadata.at("family") == "gamma2");
}

TEST_CASE("catalog parameter errors use exit code 5 and name the constraint") {
  RunResult ok = run("catalog family1 -p 1,0,0,1 -o -");
  CHECK(ok.exit_code == 0);
  RunResult bad = run("catalog family1 -p 1,0,0,0 -o -");
  CHECK(bad.exit_code == 5);
  CHECK(bad.output.find("ad") != std::string::npos);
}

TEST_CASE("unknown family uses exit code 4") {
  CHECK(run("catalog nosuch -o -").exit_code == 4);
}

TEST_CASE("act transforms documents and preserves the signature") {
  const auto doc = temp_file("am_f1.json", "");
  REQUIRE(run("catalog family1 -p 1,1,1,3 -o " + doc.string()).exit_code == 0);

  const auto out = temp_file("am_f1_moved.json", "");
  RunResult idrun = run("act -i " + doc.string() + " -p 1,0,0,0,1,0,0,0,1 -o " + out.string());
  REQUIRE(idrun.exit_code == 0);
  const TensorDocument a = parse(std::string(
      (std::stringstream() << std::ifstream(doc).rdbuf()).str()));
  const TensorDocument b = parse(std::string(
      (std::stringstream() << std::ifstream(out).rdbuf()).str()));
  for (size_t i = 0; i < a.coeffs.size(); ++i) CHECK(a.coeffs[i] == b.coeffs[i]);

  RunResult moved = run("act -i " + doc.string() + " -p 1,0,0,0,1,0,0,0,2 -o " + out.string());
  REQUIRE(moved.exit_code == 0);
  RunResult before = run("analyze -i " + doc.string());
  RunResult after = run("analyze -i " + out.string());
  const auto sig_of = [](const std::string& text) {
    const auto pos = text.find("signature (");
    REQUIRE(pos != std::string::npos);
    return text.substr(pos, 14);
  };
  CHECK(sig_of(before.output) == sig_of(after.output));
}

TEST_CASE("singular matrices use exit code 6") {
  const auto doc = temp_file("am_md.json", "");
  REQUIRE(run("catalog model3d -o " + doc.string()).exit_code == 0);
  CHECK(run("act -i " + doc.string() + " -p 1,0,0,0,1,0,0,0,0 -o -").exit_code == 6);
}

TEST_CASE("parse errors use exit code 2 and non-finite input uses 3") {
  const auto bad = temp_file("am_bad.json", "{ this is not json");
  CHECK(run("analyze -i " + bad.string()).exit_code == 2);
  const auto wrong = temp_file("am_wrong.json",
                               R"({"schema_version":"affine-moduli/1","m":2,"coeffs":[1,2]})");
  CHECK(run("analyze -i " + wrong.string()).exit_code == 2);
  const auto inf = temp_file(
      "am_inf.json", R"({"schema_version":"affine-moduli/1","m":1,"coeffs":[1e999]})");
  CHECK(run("analyze -i " + inf.string()).exit_code == 3);
}

TEST_CASE("stabilizer and torsion-bound run on documents") {
  const auto doc = temp_file("am_md2.json", "");
  REQUIRE(run("catalog model3d -o " + doc.string()).exit_code == 0);
  RunResult s = run("stabilizer -i " + doc.string());
  REQUIRE(s.exit_code == 0);
  CHECK(s.output.find("stabilizer dim 0") != std::string::npos);
  RunResult t = run("torsion-bound -i " + doc.string());
  REQUIRE(t.exit_code == 0);
  CHECK(t.output.find("torsion order bound:") != std::string::npos);
}

TEST_CASE("verify scopes run and unknown scopes use exit code 4") {
  RunResult v = run("verify catalog --seed 7");
  CHECK(v.exit_code == 0);
  CHECK(v.output.find("PASS") != std::string::npos);
  CHECK(run("verify nosuch").exit_code == 4);
}

TEST_CASE("documents read from stdin") {
  RunResult piped = run("catalog gamma2 -o - | " +
                        std::string(AFFINE_MODULI_CLI_PATH) + " analyze -i -");
  REQUIRE(piped.exit_code == 0);
  CHECK(piped.output.find("signature (2,0)") != std::string::npos);
}
