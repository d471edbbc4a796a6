#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "modfun/cli/cli.hpp"
#include "modfun/errors.hpp"
#include "modfun/modeq/modeq.hpp"

using namespace modfun;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_tuple_spec and parse_poly") {
  const TupleA t = parse_tuple_spec("2,3,1;2,5,1", 11);
  REQUIRE(t.size() == 2);
  CHECK(t.triples[0] == TripleA::make(11, 2, 3, 1));
  CHECK(t.triples[1] == TripleA::make(11, 2, 5, 1));
  const IntPoly f = parse_poly("X1^2*X2", 2);
  CHECK(f == IntPoly(2, {{{2, 1}, 1}}));
  CHECK(parse_poly("X1", 1) == IntPoly::product_of_variables(1));
  CHECK(parse_poly("3*X1^2*X2 - X2 + 5", 2) == IntPoly(2, {{{2, 1}, 3}, {{0, 1}, -1}, {{0, 0}, 5}}));
  CHECK(parse_poly("X1*X1 - X1^2 + 1", 1) == IntPoly::constant(1, 1));
  CHECK_THROWS_AS(parse_tuple_spec("2,2,1", 7), ValidationError);
  CHECK_THROWS_AS(parse_tuple_spec("2,3", 7), ValidationError);
  CHECK_THROWS_AS(parse_tuple_spec("2,3,9", 11), ValidationError);
  CHECK_THROWS_AS(parse_poly("1/2*X1", 1), ValidationError);
  CHECK_THROWS_AS(parse_poly("X3", 2), ValidationError);
  CHECK_THROWS_AS(parse_poly("X1 +", 1), ValidationError);
  CHECK_THROWS_AS(parse_poly("", 1), ValidationError);
}

TEST_CASE("modeq-t text and json") {
  const Result text = run({"modeq-t", "--level", "7", "--tuple", "2,3,1", "--poly", "X1", "--format", "text"});
  CHECK(text.code == 0);
  CHECK(text.out ==
        "X^8 - 36*X^7 + 546*X^6 - 4592*X^5 + 23835*X^4 - 80304*X^3 + 176050*X^2 - (j + 232500)*X + (8*j + "
        "140625)\n");
  CHECK(text.err.find("truncation") != std::string::npos);

  const Result json = run({"modeq-t", "--level", "7", "--tuple", "2,3,1"});
  CHECK(json.code == 0);
  const auto doc = nlohmann::json::parse(json.out);
  const BivarPoly phi = BivarPoly::from_json(doc["phi"]);
  CHECK(phi == modular_equation_T(parse_tuple_spec("2,3,1", 7), IntPoly::product_of_variables(1)));
  CHECK(doc["is_integral"] == true);
  // Identical requests give identical bytes.
  CHECK(run({"modeq-t", "--level", "7", "--tuple", "2,3,1"}).out == json.out);
}

TEST_CASE("classpoly, nsystem, transversal") {
  const Result h = run({"classpoly", "--level", "7", "--tuple", "2,3,1", "--poly", "X1", "--disc", "-3", "--b0", "5",
                        "--format", "text"});
  CHECK(h.code == 0);
  CHECK(h.out == "X - (3+3*sqrt(-3))/2\n");

  const Result tr = run({"transversal", "--level", "12", "--format", "json"});
  CHECK(tr.code == 0);
  const auto doc = nlohmann::json::parse(tr.out);
  CHECK(doc["matrices"].size() == 24);
  CHECK(doc["count"] == 24);

  const Result ns = run({"nsystem", "--level", "17", "--disc", "-84", "--b0", "8"});
  CHECK(ns.code == 0);
  const auto nd = nlohmann::json::parse(ns.out);
  CHECK(nd["B0"] == 16);
  CHECK(nd["h"] == 4);
}

TEST_CASE("evaluation commands") {
  const Result j = run({"eval-j", "--form", "1,1,2", "--digits", "30"});
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(std::stod(doc["value"]["re"].get<std::string>()) == doctest::Approx(-3375.0));

  const Result t = run({"eval-t", "--level", "7", "--tuple", "2,3,1", "--form", "1,5,7", "--digits", "30"});
  CHECK(t.code == 0);
  const auto td = nlohmann::json::parse(t.out);
  CHECK(std::stod(td["value"]["re"].get<std::string>()) == doctest::Approx(1.5));
  CHECK(std::stod(td["value"]["im"].get<std::string>()) == doctest::Approx(2.598076211353316));

  const Result w = run({"eval-w", "--level", "11", "--triple", "2,3,1", "--tau", "0.1,0.9", "--digits", "30"});
  CHECK(w.code == 0);

  setenv("MODFUN_DIGITS", "25", 1);
  const Result e = run({"eval-j", "--tau", "0,1"});
  unsetenv("MODFUN_DIGITS");
  CHECK(e.code == 0);
  CHECK(nlohmann::json::parse(e.out)["digits"] == 25);
}

TEST_CASE("qexp") {
  const Result r = run({"qexp", "--level", "7", "--phi", "1", "--terms", "10"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["trunc"] == 10);
  CHECK(doc["coeffs"].size() > 0);
  const Result w = run({"qexp", "--level", "7", "--triple", "2,3,1", "--row", "1,0", "--terms", "8", "--format", "text"});
  CHECK(w.code == 0);
  CHECK(w.out.rfind("W[2,3,1] = ", 0) == 0);
  CHECK(run({"qexp", "--level", "7", "--terms", "8"}).code == 2);
}

TEST_CASE("exit codes and --out") {
  CHECK(run({"modeq-t", "--level", "7", "--tuple", "2,2,1"}).code == 2);
  CHECK(run({"modeq-t", "--level", "2", "--tuple", "1,2,3"}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  CHECK(run({"nsystem", "--level", "7", "--disc", "-3", "--b0", "4"}).code == 2);
  CHECK(run({"eval-j", "--tau", "0,-1"}).code == 2);

  const auto path = std::filesystem::temp_directory_path() / "modfun_cli_test.json";
  std::filesystem::remove(path);
  const Result r = run({"nsystem", "--level", "7", "--disc", "-59", "--b0", "5", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["forms"].size() == 3);
  std::filesystem::remove(path);
}
