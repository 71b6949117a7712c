#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commands.hpp"
#include "fixtures.hpp"
#include "rbsuper/structures/text_format.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = rbsuper::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_tmp(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "rbsuper_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kR2 = R"(
[operator]
name = R2
R(e1) = a1 e1
R(e2) = 2 a1 e2
)";

const char* kB21Families = R"(
[operator]
name = R1
R(e1) = a1 e1

[operator]
name = R2
R(e1) = a1 e1
R(e2) = 2 a1 e2
constraints = a1
)";

void check_schema(const json& j) {
  for (auto key : {"command", "status", "witnesses", "timing"}) CHECK(j.contains(key));
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"check"}).code == 2);
  CHECK(cli({"check", "/nonexistent/file.salg"}).code == 2);
  CHECK(cli({"catalog", "show", "no_such_entry"}).code == 2);
  CHECK(cli({"solve-rb", write_tmp("b21.salg", fixtures::kB21), "--method", "magic"}).code == 2);
  std::string b21 = write_tmp("b21.salg", fixtures::kB21);
  CHECK(cli({"derive", "no_such_construction", b21}).code == 2);
  CHECK(cli({"derive", "prelie_rb_to_prelie", b21}).code == 2);  // no operator given
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("errors in JSON mode are still one object") {
  Result r = cli({"--json", "check", "/nonexistent/file.salg"});
  CHECK(r.code == 2);
  json j = json::parse(r.out);
  CHECK(j["status"] == "error");
  CHECK(j["command"] == "check");
}

TEST_CASE("check") {
  Result ok = cli({"check", write_tmp("b22.salg", fixtures::kB22)});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("status: pass") != std::string::npos);

  // odd * odd -> odd breaks the grading.
  std::string bad = write_tmp("bad.salg", "[algebra]\nname = bad\nkind = pre-lie\nbasis = e1:even, e2:odd\n\n"
                                          "[products]\ne2 * e2 = e2\n");
  Result r = cli({"--json", "check", bad});
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  check_schema(j);
  CHECK(j["status"] == "fail");
  REQUIRE(!j["witnesses"].empty());
  CHECK(j["witnesses"][0]["subject"] == "grading");
  CHECK(j["witnesses"][0]["indices"] == std::vector<int>{2, 2});
}

TEST_CASE("verify-rb") {
  std::string b21 = write_tmp("b21.salg", fixtures::kB21);
  CHECK(cli({"verify-rb", b21, write_tmp("r2.op", kR2)}).code == 0);
  Result r = cli({"--json", "verify-rb", b21, write_tmp("r3.op", "[operator]\nname = R\nR(e1) = a1 e1\nR(e2) = 3 a1 e2\n")});
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  check_schema(j);
  CHECK(!j["witnesses"].empty());
}

TEST_CASE("derive writes a re-ingestible algebra") {
  std::string b21 = write_tmp("b21.salg", fixtures::kB21);
  std::string out = (fs::temp_directory_path() / "rbsuper_cli_test" / "derived.salg").string();
  Result r = cli({"derive", "prelie_rb_to_prelie", b21, "--rb", write_tmp("r2.op", kR2), "-o", out});
  CHECK(r.code == 0);
  rbsuper::AlgebraFile f = rbsuper::load_algebra_file(out);
  // x * y = R(x) o y - (-1)^{|x||y|} y o R(x): (e2, e2) gives 2a1 * 1/2 e1 + 2a1 * 1/2 e1.
  rbsuper::Vec v = f.algebra.table().product(1, 1);
  CHECK(v[0].str() == "2*a1");
  CHECK(v[1].is_zero());
  CHECK(cli({"check", out}).code == 0);

  // Without -o the algebra goes to stdout.
  Result s = cli({"derive", "prelie_rb_to_prelie", b21, "--rb", write_tmp("r2.op", kR2)});
  CHECK(s.code == 0);
  CHECK(rbsuper::parse_algebra_text(s.out).algebra.dim() == 2);
}

TEST_CASE("solve-rb matches numeric points against the file's families") {
  std::string path = write_tmp("b21f.salg", std::string(fixtures::kB21) + kB21Families);
  Result r = cli({"--json", "solve-rb", path, "--restarts", "50"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  check_schema(j);
  CHECK(j["seed"] == 0);
  CHECK(j["numeric"]["unmatched"] == 0);
  CHECK(j["groebner"]["dimension"] == 1);

  // A pin that names no parameter.
  CHECK(cli({"solve-rb", path, "--pin", "k=2"}).code == 2);
}

TEST_CASE("solve-rb with pinned parameters") {
  const char* param = "[algebra]\nname = P\nkind = pre-lie\nbasis = e1:even, e2:odd\nparameters = k\n\n"
                      "[products]\ne1 * e1 = k e1\n";
  std::string path = write_tmp("param.salg", param);
  CHECK(cli({"solve-rb", path}).code == 2);  // k left free
  CHECK(cli({"solve-rb", path, "--pin", "k=2", "--method", "groebner"}).code == 0);
}

TEST_CASE("oracle-check") {
  std::string b21 = write_tmp("b21.salg", fixtures::kB21);
  Result r = cli({"--json", "--seed", "5", "oracle-check", b21, write_tmp("r2.op", kR2)});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  check_schema(j);
  CHECK(j["seed"] == 5);
  CHECK(j["operators"][0]["agree"] == true);
  CHECK(j["operators"][0]["points"].size() == 5);
}

TEST_CASE("catalog subcommands") {
  Result list = cli({"catalog", "list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("B_2_1") != std::string::npos);

  Result show = cli({"catalog", "show", "B_2_2"});
  CHECK(show.code == 0);
  CHECK(show.out.find("e2 * e2 = 1/2 e1") != std::string::npos);

  Result v = cli({"--json", "catalog", "verify", "--filter", "B_2_*"});
  CHECK(v.code == 0);
  json j = json::parse(v.out);
  check_schema(j);
  CHECK(j["summary"]["checked"] == 3);
  CHECK(j["summary"]["failed"] == 0);
  // Verdict lines are sorted by entry, then family.
  CHECK(j["families"][0]["entry"] == "B_2_1");
  CHECK(j["families"][0]["family"] == "R1");

  Result empty = cli({"catalog", "verify", "--filter", "nothing*"});
  CHECK(empty.code == 0);
}
