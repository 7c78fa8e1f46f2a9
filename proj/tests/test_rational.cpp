#include <catch2/catch_amalgamated.hpp>

#include "hdta/rational.hpp"

using hdta::Rat;

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(hdta::parse_rational("5") == Rat(5));
  CHECK(hdta::parse_rational("3/4") == Rat(3, 4));
  CHECK(hdta::parse_rational("1.5") == Rat(3, 2));
  CHECK(hdta::parse_rational("0.25") == Rat(1, 4));
  CHECK(hdta::parse_rational("0") == Rat(0));
  CHECK(hdta::parse_rational("9.5") == Rat(19, 2));
}

TEST_CASE("parse_rational rejects garbage") {
  CHECK_THROWS(hdta::parse_rational(""));
  CHECK_THROWS(hdta::parse_rational("x"));
  CHECK_THROWS(hdta::parse_rational("1/0"));
}

TEST_CASE("to_string prefers short decimal forms") {
  CHECK(hdta::to_string(Rat(5)) == "5");
  CHECK(hdta::to_string(Rat(3, 2)) == "1.5");
  CHECK(hdta::to_string(Rat(1, 3)) == "1/3");
}

TEST_CASE("to_string round-trips through parse_rational") {
  std::vector<Rat> xs{Rat(0), Rat(7), Rat(1, 2), Rat(19, 2), Rat(22, 7), Rat(3, 8)};
  for (const Rat& x : xs) CHECK(hdta::parse_rational(hdta::to_string(x)) == x);
}
