#include <random>

#include "doctest.h"
#include "pcalab/k2m.hpp"
#include "pcalab/machine.hpp"
#include "test_support.hpp"

using namespace pcalab;
using testsup::must_value;
using testsup::prefix_of;

namespace {

Eval run_prog(const ProgPtr& p, const Nat& input, const Real& oracle,
              std::uint64_t fuel = 1'000'000) {
  return opl_eval(program_encode(*p), input, oracle, Fuel{fuel});
}

// Smallest budget below 4096 at which the evaluation settles.
std::uint64_t settle_fuel(const Nat& code, const Nat& input, const Real& oracle) {
  for (std::uint64_t f = 1; f < 4096; ++f) {
    if (!opl_eval(code, input, oracle, Fuel{f}).is_fuel_out()) return f;
  }
  return 4096;
}

}  // namespace

TEST_CASE("basic evaluation") {
  Real zeros = real_zeros();
  CHECK(run_prog(Program::lit(7), 5, zeros).get() == 7);

  Real oracle = parse_real("ec:9,8;0");
  CHECK(run_prog(Program::qry(Program::in()), 1, oracle).get() == 8);

  // a search whose body is never zero burns any finite budget
  ProgPtr spin = Program::mu(Program::lit(1));
  CHECK(run_prog(spin, 0, zeros, 10).is_fuel_out());
  CHECK(run_prog(spin, 0, zeros, 100'000).is_fuel_out());

  // invalid code is a proven divergence
  CHECK(opl_eval(Nat(0), 3, zeros, Fuel{1000}).is_diverged());

  // idx outside any mu is malformed
  CHECK(run_prog(Program::idx(), 0, zeros).is_diverged());

  // mu finds the least root and sees the loop index
  ProgPtr at_least_two = Program::mu(
      Program::if0(Program::idx(), Program::lit(1),
                   Program::if0(Program::pred(Program::idx()), Program::lit(1), Program::lit(0))));
  CHECK(run_prog(at_least_two, 0, zeros).get() == 2);

  // pairing projections invert
  ProgPtr both = Program::pair(Program::fst(Program::in()), Program::snd(Program::in()));
  Nat packed = cantor_pair(12, 34);
  CHECK(run_prog(both, packed, zeros).get() == packed);

  // pred floors at zero
  CHECK(run_prog(Program::pred(Program::lit(0)), 0, zeros).get() == 0);
}

TEST_CASE("universal wrapping costs only constant overhead") {
  Real oracle = parse_real("ec:4,7,1;2");
  std::mt19937_64 g(11);
  std::vector<ProgPtr> pool = {
      Program::lit(9),
      Program::qry(Program::in()),
      Program::succ(Program::qry(Program::succ(Program::in()))),
      Program::pair(Program::in(), Program::qry(Program::lit(0))),
  };
  for (const auto& p : pool) {
    Nat e = program_encode(*p);
    ProgPtr wrapped = Program::run(Program::lit(e), Program::in());
    for (int t = 0; t < 4; ++t) {
      Nat input = g() % 40;
      Eval direct = opl_eval(e, input, oracle, Fuel{100'000});
      Eval indirect = opl_eval(program_encode(*wrapped), input, oracle, Fuel{100'000});
      CHECK(direct == indirect);
      std::uint64_t fd = settle_fuel(e, input, oracle);
      std::uint64_t fw = settle_fuel(program_encode(*wrapped), input, oracle);
      CHECK(fw <= fd + 8);
    }
  }
}

TEST_CASE("virtualization through the identity oracle program") {
  Real oracle = parse_real("ec:5,1,2,8;3");
  Nat identity = program_encode(*Program::qry(Program::in()));
  std::vector<ProgPtr> pool = {
      Program::qry(Program::in()),
      Program::succ(Program::qry(Program::succ(Program::in()))),
      Program::qry(Program::qry(Program::in())),
  };
  for (const auto& p : pool) {
    Nat e = program_encode(*p);
    ProgPtr via = Program::run_via(Program::lit(e), Program::in(), Program::lit(identity));
    ProgPtr run = Program::run(Program::lit(e), Program::in());
    for (Nat input = 0; input < 6; ++input) {
      CHECK(opl_eval(program_encode(*via), input, oracle, Fuel{100'000}) ==
            opl_eval(program_encode(*run), input, oracle, Fuel{100'000}));
    }
  }
  // an invalid virtualizer is a proven divergence
  ProgPtr bad = Program::run_via(Program::lit(program_encode(*Program::in())), Program::in(),
                                 Program::lit(0));
  CHECK(opl_eval(program_encode(*bad), 1, oracle, Fuel{100'000}).is_diverged());
}

TEST_CASE("machine combinator layouts") {
  const auto& tg = k2m::tags();
  Real k = k2m::combinator_k();
  Real s = k2m::combinator_s();
  CHECK(must_value(k, 0) == tg.k);
  CHECK(must_value(k, 1) == 0);
  CHECK(must_value(s, 0) == tg.s);

  Real a = parse_real("ec:3,1,4;0");
  Real b = parse_real("ec:0;0");
  Real ka = k2m::apply(k, a);
  CHECK(must_value(ka, 0) == tg.ka);
  for (unsigned i = 0; i < 8; ++i) CHECK(must_value(ka, i + 1) == must_value(a, i));

  Real kab = k2m::apply(ka, b);
  CHECK(must_value(kab, 2) == 4);
  CHECK(prefix_eq(kab, a, 16, Fuel{1'000'000}).is_eq());
  // the same for a different second operand: kab does not depend on b
  CHECK(prefix_eq(k2m::apply(ka, parse_real("ec:9,9;9")), a, 16, Fuel{1'000'000}).is_eq());

  Real sa = k2m::apply(s, a);
  CHECK(must_value(sa, 0) == tg.sa);
  Real sab = k2m::apply(sa, b);
  CHECK(must_value(sab, 0) == tg.sab);
  for (unsigned i = 0; i < 8; ++i) {
    CHECK(must_value(sab, 2 * i + 1) == must_value(a, i));
    CHECK(must_value(sab, 2 * i + 2) == must_value(b, i));
  }

  Real c = parse_real("ec:5;0");
  Real skkc = k2m::apply_all({s, k, k, c});
  CHECK(prefix_eq(skkc, c, 16, Fuel{1'000'000}).is_eq());
}

TEST_CASE("s law against a program-backed operand") {
  // a encodes the constant-3 functional, so a*c and (s*k*a)*c both settle
  Real a = real_prg(program_encode(*Program::lit(3)));
  Real k = k2m::combinator_k();
  Real s = k2m::combinator_s();
  Real c = parse_real("ec:2,2;1");
  Real lhs = k2m::apply_all({s, k, a, c});
  Real rhs = k2m::apply(k2m::apply(k, c), k2m::apply(a, c));
  CHECK(prefix_eq(lhs, rhs, 12, Fuel{1'000'000}).is_eq());
}

TEST_CASE("operand extraction from sab") {
  Real s = k2m::combinator_s();
  Real a = parse_real("ec:1;0");
  Real b = parse_real("ec:2;0");
  Real sab = k2m::apply(k2m::apply(s, a), b);

  auto parts = k2m::extract_sab(sab, Fuel{1'000'000});
  CHECK(parts.tag_ok);
  CHECK(prefix_eq(parts.a, a, 16, Fuel{1'000'000}).is_eq());
  CHECK(prefix_eq(parts.b, b, 16, Fuel{1'000'000}).is_eq());

  Real zeros = real_zeros();
  Real szz = k2m::apply(k2m::apply(s, zeros), zeros);
  auto zparts = k2m::extract_sab(szz, Fuel{1'000'000});
  CHECK(zparts.tag_ok);
  CHECK(prefix_eq(zparts.a, zeros, 16, Fuel{1'000'000}).is_eq());

  auto wrong = k2m::extract_sab(k2m::apply(k2m::combinator_k(), a), Fuel{1'000'000});
  CHECK(!wrong.tag_ok);
  CHECK(wrong.found_tag == k2m::tags().ka);
}

TEST_CASE("constant functional ignores argument and position") {
  Real alpha = real_prg(program_encode(*Program::lit(3)));
  for (const char* beta : {"ec:0;0", "ec:9,1;5"}) {
    Real ab = k2m::apply(alpha, parse_real(beta));
    for (unsigned n = 0; n < 6; ++n) CHECK(must_value(ab, n) == 3);
  }
  // invalid head code diverges everywhere
  Real bad = real_prg(0);
  Real bb = k2m::apply(bad, real_zeros());
  for (unsigned n = 0; n < 4; ++n) CHECK(eval_at(bb, n, Fuel{10'000}).is_diverged());
}

TEST_CASE("argument projection via odd oracle slots") {
  // oracle(2n+1) of a(+)b is b(n): the program realizing it turns any
  // alpha into the identity on the right operand
  const auto& rc = reserved_codes();
  ProgPtr twice = Program::run(Program::lit(rc.dbl),
                               Program::pair(Program::lit(rc.dbl), Program::in()));
  ProgPtr proj = Program::qry(Program::succ(twice));
  Real alpha = real_prg(program_encode(*proj));
  Real beta = parse_real("ec:8,6,7;5");
  Real ab = k2m::apply(alpha, beta);
  CHECK(prefix_eq(ab, beta, 12, Fuel{1'000'000}).is_eq());
}
