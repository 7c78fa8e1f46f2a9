#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"
#include "hdta/ipomset.hpp"
#include "hdta/step_sequence.hpp"
#include "hdta/text_io.hpp"

using hdta::Ipomset;

namespace {

Ipomset ip(const std::string& s) { return hdta::parse_ipomset(s); }

const char* kAB = "{events: x1:a, x2:b; prec: x1<x2; evord: ; S: ; T: }";
const char* kBA = "{events: x1:b, x2:a; prec: x1<x2; evord: ; S: ; T: }";
const char* kAparB = "{events: x1:a, x2:b; prec: ; evord: x1<x2; S: ; T: }";

}  // namespace

TEST_CASE("gluing with empty interfaces is serial composition") {
  auto a = ip("{events: x1:a; prec: ; evord: ; S: ; T: }");
  auto b = ip("{events: x1:b; prec: ; evord: ; S: ; T: }");
  auto g = hdta::glue(a, b);
  REQUIRE(g);
  CHECK(hdta::isomorphic(*g, ip(kAB)));
  CHECK_FALSE(hdta::isomorphic(*g, ip(kBA)));
}

TEST_CASE("gluing matches terminating and starting interfaces") {
  // a started in the left factor continues through the right one.
  auto l = ip("{events: x1:a; prec: ; evord: ; S: ; T: x1}");
  auto r = ip("{events: x1:a, x2:b; prec: x1<x2; evord: ; S: x1; T: }");
  auto g = hdta::glue(l, r);
  REQUIRE(g);
  CHECK(hdta::isomorphic(*g, ip(kAB)));
  CHECK(g->size() == 2);
}

TEST_CASE("gluing is undefined on mismatched interfaces") {
  auto l = ip("{events: x1:a; prec: ; evord: ; S: ; T: x1}");
  auto r = ip("{events: x1:b; prec: ; evord: ; S: x1; T: }");
  CHECK_FALSE(hdta::glue(l, r));
}

TEST_CASE("gluing is associative where defined") {
  std::mt19937 rng(7);
  size_t done = 0;
  while (done < 50) {
    auto p = gen::random_ipomset(rng, 3);
    auto q = gen::random_ipomset(rng, 3);
    auto r = gen::random_ipomset(rng, 3);
    auto pq = hdta::glue(p, q);
    if (!pq) continue;
    auto qr = hdta::glue(q, r);
    if (!qr) continue;
    auto left = hdta::glue(*pq, r);
    auto right = hdta::glue(p, *qr);
    REQUIRE(left);
    REQUIRE(right);
    CHECK(hdta::isomorphic(*left, *right));
    ++done;
  }
}

TEST_CASE("subsumption relates linearizations to their concurrent original") {
  CHECK(hdta::subsumes(ip(kAB), ip(kAparB)));
  CHECK(hdta::subsumes(ip(kBA), ip(kAparB)));
  CHECK_FALSE(hdta::subsumes(ip(kAparB), ip(kAB)));
  CHECK_FALSE(hdta::subsumes(ip(kAB), ip(kBA)));
}

TEST_CASE("subsumption ignores non-essential event order") {
  // With a precedence edge the pair is not concurrent, so event order between
  // the two events is not essential and need not be preserved.
  auto withOrder = ip("{events: x1:a, x2:b; prec: x1<x2; evord: x1<x2; S: ; T: }");
  CHECK(hdta::isomorphic(ip(kAB), withOrder));
}

TEST_CASE("subsumption is reflexive and transitive on random ipomsets") {
  std::mt19937 rng(11);
  std::vector<Ipomset> pool;
  for (int i = 0; i < 30; ++i) pool.push_back(gen::random_ipomset(rng, 4));
  for (const auto& p : pool) CHECK(hdta::subsumes(p, p));
  for (const auto& p : pool)
    for (const auto& q : pool)
      for (const auto& r : pool)
        if (hdta::subsumes(p, q) && hdta::subsumes(q, r)) CHECK(hdta::subsumes(p, r));
}

TEST_CASE("isomorphism is subsumption both ways") {
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    auto p = gen::random_ipomset(rng, 4);
    auto q = gen::random_ipomset(rng, 4);
    CHECK(hdta::isomorphic(p, q) == (hdta::subsumes(p, q) && hdta::subsumes(q, p)));
  }
}

TEST_CASE("interfaces distinguish otherwise equal ipomsets") {
  auto plain = ip("{events: x1:a; prec: ; evord: ; S: ; T: }");
  auto sourced = ip("{events: x1:a; prec: ; evord: ; S: x1; T: }");
  CHECK_FALSE(hdta::isomorphic(plain, sourced));
  CHECK_FALSE(hdta::subsumes(plain, sourced));
}

TEST_CASE("generated ipomsets are valid interval orders") {
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    auto p = gen::random_ipomset(rng);
    CHECK(hdta::ipomset_violations(p).empty());
    CHECK(hdta::is_interval_order(p.prec));
  }
}

TEST_CASE("the 2+2 shape is rejected") {
  // a<b and c<d with no cross precedence is not an interval order.
  auto prec = hdta::empty_relation(4);
  prec[0][1] = prec[2][3] = true;
  CHECK_FALSE(hdta::is_interval_order(prec));
  auto evord = hdta::empty_relation(4);
  evord[0][2] = evord[0][3] = evord[1][2] = evord[1][3] = true;
  CHECK_THROWS(hdta::make_ipomset({"a", "b", "c", "d"}, prec, evord,
                                  std::vector<bool>(4, false), std::vector<bool>(4, false)));
}

TEST_CASE("down_closure of the parallel word adds both linearizations") {
  auto closed = hdta::down_closure({ip(kAparB)});
  REQUIRE(closed.size() == 3);
  auto contains = [&](const Ipomset& p) {
    for (const auto& q : closed)
      if (hdta::isomorphic(p, q)) return true;
    return false;
  };
  CHECK(contains(ip(kAparB)));
  CHECK(contains(ip(kAB)));
  CHECK(contains(ip(kBA)));
}

TEST_CASE("down_closure fixes words and collapses isomorphic refinements") {
  auto word = hdta::down_closure({ip(kAB)});
  REQUIRE(word.size() == 1);
  CHECK(hdta::isomorphic(word.front(), ip(kAB)));

  auto aa = ip("{events: x1:a, x2:a; prec: ; evord: x1<x2; S: ; T: }");
  auto closedAA = hdta::down_closure({aa});
  CHECK(closedAA.size() == 2);  // [a||a] and the single serialization aa
}

TEST_CASE("down_closure is idempotent and extensive") {
  std::mt19937 rng(23);
  for (int i = 0; i < 20; ++i) {
    auto p = gen::random_ipomset(rng, 4);
    auto once = hdta::down_closure({p});
    auto twice = hdta::down_closure(once);
    CHECK(once.size() == twice.size());
    bool containsP = false;
    for (const auto& q : once) containsP = containsP || hdta::isomorphic(p, q);
    CHECK(containsP);
    for (const auto& q : once) CHECK(hdta::subsumes(q, p));
  }
}
