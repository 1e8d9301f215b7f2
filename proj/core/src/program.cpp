#include "pcalab/program.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "pcalab/seqcode.hpp"

namespace pcalab {

namespace {

ProgPtr node(Op op, Nat payload, std::vector<ProgPtr> kids) {
  auto p = std::make_shared<Program>();
  p->op = op;
  p->payload = std::move(payload);
  p->kids = std::move(kids);
  return p;
}

}  // namespace

ProgPtr Program::in() { return node(Op::in, 0, {}); }
ProgPtr Program::idx() { return node(Op::idx, 0, {}); }
ProgPtr Program::lit(Nat k) { return node(Op::lit, std::move(k), {}); }
ProgPtr Program::succ(ProgPtr e) { return node(Op::succ, 0, {std::move(e)}); }
ProgPtr Program::pred(ProgPtr e) { return node(Op::pred, 0, {std::move(e)}); }
ProgPtr Program::qry(ProgPtr e) { return node(Op::qry, 0, {std::move(e)}); }
ProgPtr Program::if0(ProgPtr c, ProgPtr t, ProgPtr f) {
  return node(Op::if0, 0, {std::move(c), std::move(t), std::move(f)});
}
ProgPtr Program::pair(ProgPtr a, ProgPtr b) {
  return node(Op::pair, 0, {std::move(a), std::move(b)});
}
ProgPtr Program::fst(ProgPtr e) { return node(Op::fst, 0, {std::move(e)}); }
ProgPtr Program::snd(ProgPtr e) { return node(Op::snd, 0, {std::move(e)}); }
ProgPtr Program::mu(ProgPtr body) { return node(Op::mu, 0, {std::move(body)}); }
ProgPtr Program::run(ProgPtr d, ProgPtr t) {
  return node(Op::run, 0, {std::move(d), std::move(t)});
}
ProgPtr Program::run_via(ProgPtr d, ProgPtr t, ProgPtr q) {
  return node(Op::run_via, 0, {std::move(d), std::move(t), std::move(q)});
}

unsigned op_arity(Op op) {
  switch (op) {
    case Op::in:
    case Op::lit:
    case Op::idx: return 0;
    case Op::succ:
    case Op::pred:
    case Op::qry:
    case Op::fst:
    case Op::snd:
    case Op::mu: return 1;
    case Op::pair:
    case Op::run: return 2;
    case Op::if0:
    case Op::run_via: return 3;
  }
  return 0;
}

bool program_equal(const Program& a, const Program& b) {
  if (a.op != b.op || a.payload != b.payload || a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!program_equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

namespace {

// --- the pinned stage and helper programs ---
//
// Helper protocol: input is pair(self, x); recursion re-runs self on the
// shrunk argument. The stage programs exploit that under machine
// application the oracle's slot 0 always holds the running program's own
// number, and that slot layout of join puts the left operand on evens.

ProgPtr recur_self(ProgPtr arg) {
  auto self = Program::fst(Program::in());
  return Program::run(std::move(self), Program::pair(Program::fst(Program::in()), std::move(arg)));
}

ProgPtr helper_call(const Nat& code, ProgPtr x) {
  return Program::run(Program::lit(code), Program::pair(Program::lit(code), std::move(x)));
}

ProgPtr build_dbl() {
  auto x = [] { return Program::snd(Program::in()); };
  return Program::if0(x(), Program::lit(0),
                      Program::succ(Program::succ(recur_self(Program::pred(x())))));
}

ProgPtr build_par() {
  auto x = [] { return Program::snd(Program::in()); };
  return Program::if0(x(), Program::lit(0),
                      Program::if0(Program::pred(x()), Program::lit(1),
                                   recur_self(Program::pred(Program::pred(x())))));
}

ProgPtr build_half() {
  auto x = [] { return Program::snd(Program::in()); };
  return Program::if0(x(), Program::lit(0),
                      Program::if0(Program::pred(x()), Program::lit(0),
                                   Program::succ(recur_self(Program::pred(Program::pred(x()))))));
}

struct Numbering {
  std::map<Nat, Nat> swap;          // the transposition, both directions
  std::map<Nat, ProgPtr> stage_by_code;
};

Nat raw_encode(const Program& p, const Numbering& nb);

Nat composed_encode(const Program& p, const Numbering& nb) {
  Nat raw = raw_encode(p, nb);
  auto it = nb.swap.find(raw);
  return it == nb.swap.end() ? raw : it->second;
}

Nat raw_encode(const Program& p, const Numbering& nb) {
  SeqBuilder sb;
  sb.push(Nat(static_cast<unsigned>(p.op)));
  for (const auto& k : p.kids) sb.push(composed_encode(*k, nb));
  if (p.op == Op::lit) sb.push(p.payload);
  return sb.code();
}

void check_no_reserved_subtrees(const Program& p, const Numbering& nb) {
  for (const auto& k : p.kids) {
    Nat c = composed_encode(*k, nb);
    if (nb.swap.count(c))
      throw std::logic_error("stage program subtree collides with a reserved code");
    check_no_reserved_subtrees(*k, nb);
  }
}

Numbering build_numbering() {
  Numbering nb;
  const ReservedCodes rc;

  auto reg = [&nb](const ProgPtr& p, const Nat& target) {
    Nat raw = raw_encode(*p, nb);
    if (nb.swap.count(raw) || nb.swap.count(target))
      throw std::logic_error("program numbering transposition clash");
    nb.swap[raw] = target;
    nb.swap[target] = raw;
    nb.stage_by_code[target] = p;
  };

  ProgPtr dbl = build_dbl();
  ProgPtr par = build_par();
  ProgPtr half = build_half();
  reg(dbl, rc.dbl);
  reg(par, rc.par);
  reg(half, rc.half);

  auto in = [] { return Program::in(); };

  // Virtual oracle for a (+) c over the base oracle (s*a*b) (+) c:
  // even i answers slot 2i+2, odd i answers slot i.
  ProgPtr ora_ac = Program::if0(helper_call(rc.par, in()),
                                Program::qry(helper_call(rc.dbl, Program::succ(in()))),
                                Program::qry(in()));
  reg(ora_ac, rc.ora_ac);

  // Virtual oracle for b (+) c: even i answers slot 2i+4, odd i slot i.
  ProgPtr ora_bc = Program::if0(
      helper_call(rc.par, in()),
      Program::qry(helper_call(rc.dbl, Program::succ(Program::succ(in())))),
      Program::qry(in()));
  reg(ora_bc, rc.ora_bc);

  // Virtual oracle for (a*c) (+) (b*c): even i runs program a(0) = slot 2
  // on i/2 through the a(+)c oracle, odd i runs b(0) = slot 4 on i/2
  // through the b(+)c oracle.
  ProgPtr ora_acbc = Program::if0(
      helper_call(rc.par, in()),
      Program::run_via(Program::qry(Program::lit(2)), helper_call(rc.half, in()),
                       Program::lit(rc.ora_ac)),
      Program::run_via(Program::qry(Program::lit(4)), helper_call(rc.half, in()),
                       Program::lit(rc.ora_bc)));
  reg(ora_acbc, rc.ora_acbc);

  // s*a*b*c: run program (a*c)(0) on the input through the (a*c)(+)(b*c)
  // oracle. (a*c)(0) itself is program a(0) run on 0 through a(+)c.
  ProgPtr sab = Program::run_via(
      Program::run_via(Program::qry(Program::lit(2)), Program::lit(0), Program::lit(rc.ora_ac)),
      in(), Program::lit(rc.ora_acbc));
  reg(sab, rc.sab);

  // s*a*b: input 0 emits the sab stage; n >= 1 reads the join of a and b
  // shifted by one (odd n from slot n+1, even n from slot n-1).
  ProgPtr sa = Program::if0(
      in(), Program::lit(rc.sab),
      Program::if0(helper_call(rc.par, in()), Program::qry(Program::pred(in())),
                   Program::qry(Program::succ(in()))));
  reg(sa, rc.sa);

  // s: input 0 emits the sa stage; n >= 1 copies a(n-1) from slot 2n-1.
  ProgPtr s = Program::if0(in(), Program::lit(rc.sa),
                           Program::qry(Program::pred(helper_call(rc.dbl, in()))));
  reg(s, rc.s);

  // k*a*b = a: read slot 2n+2 of (k*a) (+) b.
  ProgPtr ka = Program::qry(Program::succ(Program::succ(helper_call(rc.dbl, in()))));
  reg(ka, rc.ka);

  // k: input 0 emits the ka stage; n >= 1 copies a(n-1) from slot 2n-1.
  ProgPtr k = Program::if0(in(), Program::lit(rc.ka),
                           Program::qry(Program::pred(helper_call(rc.dbl, in()))));
  reg(k, rc.k);

  for (const auto& [code, stage] : nb.stage_by_code) check_no_reserved_subtrees(*stage, nb);
  return nb;
}

const Numbering& numbering() {
  static const Numbering nb = build_numbering();
  return nb;
}

ProgPtr decode_raw(const Nat& code, const Numbering& nb);

ProgPtr decode_composed(const Nat& code, const Numbering& nb) {
  auto it = nb.swap.find(code);
  return decode_raw(it == nb.swap.end() ? code : it->second, nb);
}

ProgPtr decode_raw(const Nat& raw, const Numbering& nb) {
  auto sigma = seq_decode(raw);
  if (sigma.empty() || sigma[0] > 12) return nullptr;
  Op op = static_cast<Op>(sigma[0].convert_to<unsigned>());
  unsigned arity = op_arity(op);
  unsigned want = 1 + arity + (op == Op::lit ? 1 : 0);
  if (sigma.size() != want) return nullptr;
  std::vector<ProgPtr> kids;
  kids.reserve(arity);
  for (unsigned i = 0; i < arity; ++i) {
    ProgPtr kid = decode_composed(sigma[1 + i], nb);
    if (!kid) return nullptr;
    kids.push_back(std::move(kid));
  }
  auto p = std::make_shared<Program>();
  p->op = op;
  p->payload = op == Op::lit ? sigma[1] : Nat(0);
  p->kids = std::move(kids);
  return p;
}

}  // namespace

const ReservedCodes& reserved_codes() {
  static const ReservedCodes rc;
  return rc;
}

Nat program_encode(const Program& p) { return composed_encode(p, numbering()); }

ProgPtr program_decode(const Nat& code) {
  static std::mutex mu;
  static std::map<Nat, ProgPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(code);
    if (it != cache.end()) return it->second;
  }
  ProgPtr p = decode_composed(code, numbering());
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(code, p);
  return p;
}

// --- s-expression syntax ---

namespace {

struct Lexer {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  std::string next() {
    skip();
    if (i >= s.size()) throw std::invalid_argument("unexpected end of program text");
    char c = s[i];
    if (c == '(' || c == ')') {
      ++i;
      return std::string(1, c);
    }
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
           s[i] != ')')
      ++i;
    return s.substr(start, i - start);
  }
};

ProgPtr parse_expr(Lexer& lx) {
  std::string tok = lx.next();
  if (tok == "in") return Program::in();
  if (tok == "idx") return Program::idx();
  if (tok != "(") throw std::invalid_argument("expected '(' or atom, got '" + tok + "'");
  std::string head = lx.next();
  auto one = [&lx] { return parse_expr(lx); };
  ProgPtr out;
  if (head == "lit") {
    std::string num = lx.next();
    for (char c : num)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("lit expects a number, got '" + num + "'");
    out = Program::lit(Nat(num));
  } else if (head == "succ") {
    out = Program::succ(one());
  } else if (head == "pred") {
    out = Program::pred(one());
  } else if (head == "qry") {
    out = Program::qry(one());
  } else if (head == "if0") {
    auto c = one();
    auto t = one();
    out = Program::if0(std::move(c), std::move(t), one());
  } else if (head == "pair") {
    auto a = one();
    out = Program::pair(std::move(a), one());
  } else if (head == "fst") {
    out = Program::fst(one());
  } else if (head == "snd") {
    out = Program::snd(one());
  } else if (head == "mu") {
    out = Program::mu(one());
  } else if (head == "run") {
    auto d = one();
    out = Program::run(std::move(d), one());
  } else if (head == "runvia") {
    auto d = one();
    auto t = one();
    out = Program::run_via(std::move(d), std::move(t), one());
  } else {
    throw std::invalid_argument("unknown operator '" + head + "'");
  }
  std::string close = lx.next();
  if (close != ")") throw std::invalid_argument("expected ')', got '" + close + "'");
  return out;
}

const char* op_name(Op op) {
  switch (op) {
    case Op::in: return "in";
    case Op::lit: return "lit";
    case Op::succ: return "succ";
    case Op::pred: return "pred";
    case Op::qry: return "qry";
    case Op::if0: return "if0";
    case Op::pair: return "pair";
    case Op::fst: return "fst";
    case Op::snd: return "snd";
    case Op::mu: return "mu";
    case Op::idx: return "idx";
    case Op::run: return "run";
    case Op::run_via: return "runvia";
  }
  return "?";
}

}  // namespace

ProgPtr parse_program(const std::string& text) {
  Lexer lx{text};
  ProgPtr p = parse_expr(lx);
  if (!lx.eof()) throw std::invalid_argument("trailing junk after program");
  return p;
}

std::string print_program(const Program& p) {
  if (p.op == Op::in || p.op == Op::idx) return op_name(p.op);
  std::ostringstream os;
  os << '(' << op_name(p.op);
  if (p.op == Op::lit) os << ' ' << p.payload;
  for (const auto& k : p.kids) os << ' ' << print_program(*k);
  os << ')';
  return os.str();
}

}  // namespace pcalab
