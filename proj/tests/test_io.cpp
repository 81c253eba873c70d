#include <doctest.h>

#include <random>

#include "longres/io.hpp"
#include "support/fixtures.hpp"

using namespace longres;
using fixtures::form;

TEST_CASE("grammar: the documented example") {
  Form f = parse_form("3/2*z1^2*z3 - z2*z3^2", 3);
  CHECK(f.degree() == 3);
  CHECK(f.coefficient(Monomial(std::vector<int>{2, 0, 1})) == Rational(3, 2));
  CHECK(f.coefficient(Monomial(std::vector<int>{0, 1, 2})) == Rational(-1));
}

TEST_CASE("grammar: constants, signs and cancellation") {
  CHECK(parse_form("0", 2).is_zero());
  CHECK(parse_form("-z1 + z1", 2).is_zero());
  CHECK(parse_form("-3/4", 2) == Form::constant(2, Rational(-3, 4)));
  CHECK(parse_form("z1*z1", 2) == form("z1^2", 2));
  CHECK(parse_form("2*z1 - z1", 2) == form("z1", 2));
}

TEST_CASE("grammar: malformed input carries positions") {
  CHECK_THROWS_AS(parse_form("z1^", 2), ParseError);
  CHECK_THROWS_AS(parse_form("z1^0", 2), ParseError);
  CHECK_THROWS_AS(parse_form("z3", 2), ParseError);
  CHECK_THROWS_AS(parse_form("1/0", 2), ParseError);
  CHECK_THROWS_AS(parse_form("z1 & z2", 2), ParseError);
  CHECK_THROWS_AS(parse_form("", 2), ParseError);
  try {
    parse_form("z1 +\n z2^", 2);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("grammar: homogeneity is an invariant, not a parse error") {
  CHECK_THROWS_AS(parse_form("z1 + 1", 2), InvariantError);
  CHECK_THROWS_AS(parse_form("z1^2 + z2", 2), InvariantError);
}

TEST_CASE("form serialization round-trips") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 50; ++t) {
    int d = 1 + static_cast<int>(rng() % 3);
    Form f = fixtures::random_form(rng, d, 1 + static_cast<int>(rng() % 3), 3,
                                   4);
    CHECK(parse_form(form_to_string(f), d) == f);
  }
  CHECK(form_to_string(Form::zero(2, 3)) == "0");
  CHECK(form_to_string(form("-z1 - 1/2*z2", 2)) == "-z1 - 1/2*z2");
}

TEST_CASE("input files: the standard fixture") {
  auto in = parse_input_text(
      R"({"d":2,"m":1,"num":[["z1*z2"]],"den":"z1+z2"})");
  REQUIRE(std::holds_alternative<RatFn>(in));
  const RatFn& f = std::get<RatFn>(in);
  CHECK(f.num() == fixtures::corpus_parallel2().num());
  CHECK(f.den() == fixtures::corpus_parallel2().den());
}

TEST_CASE("input files: malformed and invalid inputs") {
  CHECK_THROWS_AS(parse_input_text("{"), ParseError);
  CHECK_THROWS_AS(parse_input_text(R"({"d":2,"m":1,"num":[["z1^"]],"den":"1"})"),
                  ParseError);
  // Non-symmetric numerator.
  CHECK_THROWS_AS(
      parse_input_text(
          R"({"d":2,"m":2,"num":[["z1","z2"],["z1","z1"]],"den":"1"})"),
      InvariantError);
  // deg P != deg q + 1.
  CHECK_THROWS_AS(
      parse_input_text(R"({"d":2,"m":1,"num":[["z1"]],"den":"z2"})"),
      InvariantError);
  CHECK_THROWS_AS(parse_input_text(R"({"m":1,"num":[["z1"]],"den":"1"})"),
                  InvariantError);
}

TEST_CASE("round trip: parse(serialize(x)) == x") {
  for (const auto& f : fixtures::corpus()) {
    auto in = parse_input_text(serialize(f));
    REQUIRE(std::holds_alternative<RatFn>(in));
    CHECK(std::get<RatFn>(in).num() == f.num());
    CHECK(std::get<RatFn>(in).den() == f.den());
  }
  MatrixForm F = fixtures::choi_form();
  auto in = parse_input_text(serialize(F));
  REQUIRE(std::holds_alternative<MatrixForm>(in));
  CHECK(std::get<MatrixForm>(in) == F);
}

TEST_CASE("doubles are printed with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
}
