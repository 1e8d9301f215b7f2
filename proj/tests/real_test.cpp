#include <thread>

#include "doctest.h"
#include "pcalab/k2m.hpp"
#include "pcalab/real.hpp"
#include "test_support.hpp"

using namespace pcalab;
using testsup::must_value;

TEST_CASE("eventually constant literals") {
  Real r = parse_real("ec:3,1,4;0");
  CHECK(must_value(r, 2) == 4);
  CHECK(must_value(r, 100) == 0);
  CHECK(must_value(r, 0) == 3);

  Real p = parse_real("prg:12345");
  CHECK(must_value(p, 0) == 12345);
  CHECK(must_value(p, 1) == 0);

  CHECK_THROWS_AS(parse_real("ec:3,1,4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_real("ec:;0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_real("pc:0=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_real("bogus"), std::invalid_argument);
}

TEST_CASE("cons shifts the stream") {
  CHECK(must_value(real_cons(5, real_zeros()), 0) == 5);
  CHECK(must_value(real_cons(5, real_zeros()), 1) == 0);
  CHECK(must_value(real_cons(0, parse_real("ec:7;0")), 1) == 7);
}

TEST_CASE("join interleaves with evens from the left") {
  Real j = real_join(parse_real("ec:1;1"), parse_real("ec:2;2"));
  CHECK(must_value(j, 4) == 1);
  CHECK(must_value(j, 5) == 2);

  PartialReal holed = punch_holes(real_zeros(), {Nat(0), Nat(2)});
  PartialReal pj = partial_join(holed, real_zeros().partial());
  CHECK(eval_at(pj, 0, Fuel{1000}).is_diverged());
  CHECK(eval_at(pj, 1, Fuel{1000}).is_value());
  CHECK(eval_at(pj, 2, Fuel{1000}).is_value());
  CHECK(eval_at(pj, 4, Fuel{1000}).is_diverged());
}

TEST_CASE("partial graph literals") {
  PartialReal p = parse_partial("pc:0=3,2=7");
  CHECK(must_value(p, 0) == 3);
  CHECK(must_value(p, 2) == 7);
  CHECK(eval_at(p, 1, Fuel{1000}).is_diverged());
  CHECK(eval_at(parse_partial("pc:"), 0, Fuel{1000}).is_diverged());
  CHECK_THROWS_AS(parse_partial("pc:0=1,0=2"), std::invalid_argument);
  // ec and prg embed as total elements
  CHECK(must_value(parse_partial("ec:9;9"), 50) == 9);
}

TEST_CASE("prefix comparison") {
  Fuel f{10'000};
  CHECK(prefix_eq(parse_real("ec:1,2;0"), parse_real("ec:1,2;0"), 64, f).is_eq());

  auto cmp = prefix_eq(parse_real("ec:1;0"), parse_real("ec:2;0"), 8, f);
  REQUIRE(cmp.is_diff());
  CHECK(cmp.pos == 0);
  CHECK(cmp.lhs.get() == 1);
  CHECK(cmp.rhs.get() == 2);

  Real derived = k2m::apply(k2m::combinator_k(), parse_real("ec:1;0"));
  CHECK(prefix_eq(derived, derived, 4, Fuel{0}).is_inconclusive());

  // value against proven divergence is a difference; two divergences agree
  PartialReal holed = punch_holes(parse_real("ec:1,2,3;0"), {Nat(1)});
  CHECK(prefix_eq(holed, parse_real("ec:1,2,3;0").partial(), 4, f).is_diff());
  CHECK(prefix_eq(holed, holed, 4, f).is_eq());
}

TEST_CASE("fuel gates but never changes values") {
  Real k = k2m::combinator_k();
  Real a = parse_real("ec:3,1,4;0");
  Real ka = k2m::apply(k, a);
  CHECK(eval_at(ka, 0, Fuel{0}).is_fuel_out());

  // monotone: a value found at budget F persists at 2F
  Real kab = k2m::apply(ka, parse_real("ec:0;0"));
  for (unsigned n = 0; n < 8; ++n) {
    for (std::uint64_t budget : {50u, 200u, 1000u}) {
      Eval lo = eval_at(kab, n, Fuel{budget});
      if (!lo.is_value()) continue;
      Eval hi = eval_at(kab, n, Fuel{2 * budget});
      REQUIRE(hi.is_value());
      CHECK(hi.get() == lo.get());
    }
  }
}

TEST_CASE("join and cons satisfy their positional equations") {
  std::uint64_t state = 41;
  auto next = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (int t = 0; t < 40; ++t) {
    std::vector<Nat> ha{Nat(next() % 9), Nat(next() % 9)};
    std::vector<Nat> hb{Nat(next() % 9)};
    Real a = real_ec(std::move(ha), Nat(next() % 5));
    Real b = real_ec(std::move(hb), Nat(next() % 5));
    Real j = real_join(a, b);
    Nat head = next() % 20;
    Real c = real_cons(head, a);
    for (unsigned n = 0; n < 12; ++n) {
      CHECK(must_value(j, 2 * n) == must_value(a, n));
      CHECK(must_value(j, 2 * n + 1) == must_value(b, n));
      CHECK(must_value(c, n + 1) == must_value(a, n));
    }
    CHECK(must_value(c, 0) == head);
  }
}

TEST_CASE("shared streams tolerate concurrent evaluation") {
  Real kab = k2m::apply(k2m::apply(k2m::combinator_k(), parse_real("ec:3,1,4,1,5;9")),
                        parse_real("ec:0;0"));
  std::vector<Nat> left(16), right(16);
  auto worker = [&kab](std::vector<Nat>& out) {
    for (unsigned n = 0; n < 16; ++n) out[n] = must_value(kab, n);
  };
  std::thread t1(worker, std::ref(left));
  std::thread t2(worker, std::ref(right));
  t1.join();
  t2.join();
  CHECK(left == right);
  CHECK(left == testsup::prefix_of(parse_real("ec:3,1,4,1,5;9"), 16));
}
