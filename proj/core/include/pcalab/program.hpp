#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pcalab/nat.hpp"

namespace pcalab {

/// Instruction set of the oracle program language.
///
/// In        the input position
/// Lit(k)    constant
/// Succ/Pred successor / floored predecessor
/// Qry(e)    oracle value at position e
/// If0(c,t,f) t if c evaluates to 0, else f
/// Pair/Fst/Snd  Cantor pairing and its projections
/// Mu(e)     least j >= 0 with body 0; the body reads j through Idx
/// Idx       loop index of the innermost enclosing Mu
/// Run(d,t)  run the program coded by d on input t, same oracle
/// RunVia(d,t,q)  like Run, but d's oracle is virtualized through q:
///           position i answers with program q run on i under the
///           current oracle
enum class Op : std::uint8_t {
  in = 0,
  lit = 1,
  succ = 2,
  pred = 3,
  qry = 4,
  if0 = 5,
  pair = 6,
  fst = 7,
  snd = 8,
  mu = 9,
  idx = 10,
  run = 11,
  run_via = 12,
};

struct Program;
using ProgPtr = std::shared_ptr<const Program>;

struct Program {
  Op op;
  Nat payload;               // Lit only
  std::vector<ProgPtr> kids;

  static ProgPtr in();
  static ProgPtr idx();
  static ProgPtr lit(Nat k);
  static ProgPtr succ(ProgPtr e);
  static ProgPtr pred(ProgPtr e);
  static ProgPtr qry(ProgPtr e);
  static ProgPtr if0(ProgPtr c, ProgPtr t, ProgPtr f);
  static ProgPtr pair(ProgPtr a, ProgPtr b);
  static ProgPtr fst(ProgPtr e);
  static ProgPtr snd(ProgPtr e);
  static ProgPtr mu(ProgPtr body);
  static ProgPtr run(ProgPtr d, ProgPtr t);
  static ProgPtr run_via(ProgPtr d, ProgPtr t, ProgPtr q);
};

bool program_equal(const Program& a, const Program& b);

/// Number of child expressions each op carries (Lit carries a payload).
unsigned op_arity(Op op);

/// Injective numbering of programs into omega via the sequence coding of
/// (opcode, child numbers..., payload). Every value decodes: numbers whose
/// shape is invalid stand for the everywhere-diverging program and decode
/// to nullptr. A fixed transposition gives the combinator stage programs
/// small reserved numbers (see reserved_codes).
Nat program_encode(const Program& p);
ProgPtr program_decode(const Nat& code);

/// Reserved numbers of the pinned stage and helper programs.
struct ReservedCodes {
  Nat k = 2;        // builds k*a
  Nat ka = 3;       // k*a*b = a
  Nat s = 5;        // builds s*a
  Nat sa = 6;       // builds s*a*b
  Nat sab = 8;      // s*a*b*c = a*c(b*c)
  Nat ora_ac = 9;   // virtual oracle a (+) c
  Nat ora_bc = 10;  // virtual oracle b (+) c
  Nat ora_acbc = 4; // virtual oracle (a*c) (+) (b*c)
  Nat dbl = 13;     // n -> 2n helper
  Nat par = 14;     // n -> n mod 2 helper
  Nat half = 15;    // n -> floor(n/2) helper
};
const ReservedCodes& reserved_codes();

/// S-expression surface syntax, e.g. `(qry (succ in))`, `(lit 7)`.
ProgPtr parse_program(const std::string& text);
std::string print_program(const Program& p);

}  // namespace pcalab
