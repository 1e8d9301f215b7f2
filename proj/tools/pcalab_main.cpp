#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcalab/bmodel.hpp"
#include "pcalab/embed.hpp"
#include "pcalab/k2k.hpp"
#include "pcalab/k2m.hpp"
#include "pcalab/pca.hpp"
#include "pcalab/program.hpp"

namespace {

using namespace pcalab;

constexpr int kExitPass = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

enum class ModelId { k2m, k2k, b };

ModelId parse_model(const std::string& name) {
  if (name == "k2m") return ModelId::k2m;
  if (name == "k2k") return ModelId::k2k;
  if (name == "b") return ModelId::b;
  throw std::invalid_argument("unknown model '" + name + "' (expected k2m, k2k or b)");
}

// --- applicative terms: atoms and left-associated application ---

struct Term {
  std::string atom;             // leaf when nonempty
  std::vector<Term> factors;    // application chain otherwise
};

std::vector<std::string> tokenize_term(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      out.emplace_back(1, c);
      ++i;
    } else {
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')')
        ++i;
      out.push_back(text.substr(start, i - start));
    }
  }
  return out;
}

Term parse_factors(const std::vector<std::string>& toks, std::size_t& i, bool top);

Term parse_factor(const std::vector<std::string>& toks, std::size_t& i) {
  if (toks[i] == "(") {
    ++i;
    Term t = parse_factors(toks, i, false);
    if (i >= toks.size() || toks[i] != ")") throw std::invalid_argument("missing ')' in term");
    ++i;
    return t;
  }
  Term t;
  t.atom = toks[i++];
  return t;
}

Term parse_factors(const std::vector<std::string>& toks, std::size_t& i, bool top) {
  Term t;
  while (i < toks.size() && toks[i] != ")") t.factors.push_back(parse_factor(toks, i));
  if (t.factors.empty()) throw std::invalid_argument("empty term");
  if (top && i != toks.size()) throw std::invalid_argument("trailing junk in term");
  if (t.factors.size() == 1) return std::move(t.factors[0]);
  return t;
}

Term parse_term(const std::string& text) {
  auto toks = tokenize_term(text);
  std::size_t i = 0;
  return parse_factors(toks, i, true);
}

PartialReal eval_leaf(const std::string& atom, ModelId model) {
  if (atom == "k") {
    if (model == ModelId::k2k) return k2k::combinator_k().partial();
    return k2m::combinator_k().partial();
  }
  if (atom == "s") {
    if (model == ModelId::k2k) return k2k::combinator_s().partial();
    return k2m::combinator_s().partial();
  }
  if (atom.rfind("pc:", 0) == 0) {
    if (model != ModelId::b)
      throw std::invalid_argument("pc: literals are only elements of model b");
    return parse_partial(atom);
  }
  return parse_real(atom).partial();
}

PartialReal eval_term(const Term& t, ModelId model) {
  if (!t.atom.empty()) return eval_leaf(t.atom, model);
  PartialReal acc = eval_term(t.factors[0], model);
  for (std::size_t i = 1; i < t.factors.size(); ++i) {
    PartialReal arg = eval_term(t.factors[i], model);
    switch (model) {
      case ModelId::k2m: acc = k2m::apply(acc, arg); break;
      case ModelId::b: acc = bmodel::apply(acc, arg); break;
      case ModelId::k2k: acc = k2k::apply(Real(acc.node()), Real(arg.node())).partial(); break;
    }
  }
  return acc;
}

int cmd_eval(const std::string& model_name, const std::string& term_text, unsigned depth,
             std::uint64_t fuel) {
  ModelId model = parse_model(model_name);
  PartialReal value = eval_term(parse_term(term_text), model);
  bool all_values = true;
  std::ostringstream line;
  for (unsigned n = 0; n < depth; ++n) {
    Eval e = eval_at(value, n, Fuel{fuel});
    if (!e.is_value()) all_values = false;
    if (n) line << ' ';
    line << e.str();
  }
  std::cout << line.str() << "\n";
  return all_values ? kExitPass : kExitInconclusive;
}

int cmd_asm(const std::string& term_text) {
  ProgPtr p = parse_program(term_text);
  std::cout << program_encode(*p) << "\n";
  return kExitPass;
}

int cmd_embed(const std::string& table_path, unsigned depth, std::uint64_t fuel,
              const std::string& out_path) {
  if (depth < 1) throw std::invalid_argument("--depth must be at least 1");
  std::ifstream in(table_path);
  if (!in) throw std::invalid_argument("cannot open table file " + table_path);
  std::stringstream buf;
  buf << in.rdbuf();
  pca::PcaTable table = pca::PcaTable::from_json_text(buf.str());

  embed::CertifyOptions opt;
  opt.depth = depth;
  opt.fuel = fuel;
  embed::Certificate cert = embed::certify(table, opt);

  std::string text = cert.to_json_text();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text << "\n";
  } else {
    std::cout << text << "\n";
  }
  std::cerr << "certificate: " << (cert.ok() ? "pass" : "fail") << " ("
            << cert.triples.size() << " triples, depth " << depth << ")\n";
  if (cert.verdict == pca::Verdict3::fail) return kExitRefuted;
  if (cert.verdict == pca::Verdict3::inconclusive) return kExitInconclusive;
  return kExitPass;
}

void print_report(const pca::LawReport& rep) {
  std::cout << rep.law << ": " << rep.passed << " passed, " << rep.failed << " failed, "
            << rep.inconclusive << " inconclusive of " << rep.trials << "\n";
  for (const auto& note : rep.notes) std::cout << "  " << note << "\n";
}

int cmd_laws(const std::string& model_name, unsigned trials, unsigned depth, std::uint64_t fuel,
             std::uint64_t seed) {
  ModelId id = parse_model(model_name);
  std::vector<pca::LawReport> reports;
  if (id == ModelId::b) {
    auto inc = bmodel::check_strong_inclusion(trials, depth, Fuel{fuel}, seed);
    reports.push_back(inc.k_law);
    reports.push_back(inc.s_law);
  } else {
    pca::StreamModel m = id == ModelId::k2m ? pca::k2m_model() : pca::k2k_model();
    reports.push_back(pca::check_k_law(m, trials, depth, Fuel{fuel}, seed));
    reports.push_back(pca::check_s_law(m, trials / 2 + 1, depth / 2 + 1, Fuel{fuel}, seed + 1));
    if (m.extract) {
      reports.push_back(pca::check_barendregt(m, trials, depth, Fuel{fuel}, seed + 2));
    } else {
      std::cout << "barendregt/" << m.name << ": unsupported for this model\n";
    }
  }
  bool any_fail = false;
  bool any_conclusive = false;
  for (const auto& rep : reports) {
    print_report(rep);
    if (!rep.ok()) any_fail = true;
    if (rep.passed > 0) any_conclusive = true;
  }
  if (any_fail) return kExitRefuted;
  if (!any_conclusive) return kExitInconclusive;
  return kExitPass;
}

int cmd_hnf(const std::string& model_name) {
  if (parse_model(model_name) != ModelId::k2m)
    throw std::invalid_argument("hnf witnesses require --model k2m");
  pca::StreamModel m = pca::k2m_model();
  PartialReal a = parse_real("ec:1,2;0").partial();
  PartialReal b = parse_real("ec:3;1").partial();
  auto witnesses = pca::hnf_dissimilarity(m, a, b, 64, Fuel{1'000'000});
  bool all = true;
  for (const auto& w : witnesses) {
    if (w.separated)
      std::cout << w.pair << ": separated at position " << w.position << "\n";
    else
      std::cout << w.pair << ": no separating position found\n";
    all = all && w.separated;
  }
  return all ? kExitPass : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcalab: applicative structures on Baire space, two codings, law suites and "
               "embedding certificates"};
  app.require_subcommand(1);

  std::string model = "k2m";
  std::string term;
  std::string table;
  std::string out;
  unsigned eval_depth = 16;
  unsigned embed_depth = 128;
  unsigned laws_depth = 64;
  std::uint64_t fuel = 1'000'000;
  unsigned trials = 100;
  std::uint64_t seed = 42;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a term's prefix");
  eval_cmd->add_option("--model", model);
  eval_cmd->add_option("--term", term)->required();
  eval_cmd->add_option("--depth", eval_depth);
  eval_cmd->add_option("--fuel", fuel);

  auto* asm_cmd = app.add_subcommand("asm", "print the number of a program");
  asm_cmd->add_option("--term", term)->required();

  auto* embed_cmd = app.add_subcommand("embed", "certify the embedding of a finite table");
  embed_cmd->add_option("--table", table)->required();
  embed_cmd->add_option("--depth", embed_depth);
  embed_cmd->add_option("--fuel", fuel);
  embed_cmd->add_option("--out", out);

  auto* laws_cmd = app.add_subcommand("laws", "run the combinator law suites");
  laws_cmd->add_option("--model", model);
  laws_cmd->add_option("--trials", trials);
  laws_cmd->add_option("--depth", laws_depth);
  laws_cmd->add_option("--fuel", fuel);
  laws_cmd->add_option("--seed", seed);

  auto* hnf_cmd = app.add_subcommand("hnf", "print head-normal-form separation witnesses");
  hnf_cmd->add_option("--model", model);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(model, term, eval_depth, fuel);
    if (asm_cmd->parsed()) return cmd_asm(term);
    if (embed_cmd->parsed()) return cmd_embed(table, embed_depth, fuel, out);
    if (laws_cmd->parsed()) return cmd_laws(model, trials, laws_depth, fuel, seed);
    if (hnf_cmd->parsed()) return cmd_hnf(model);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
