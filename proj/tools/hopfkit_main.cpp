// hopfkit: exact Hopf-algebra toolkit command line.
//
// Subcommands: check, integral, cointegral, symint, comodulus, modtrace,
// qgroup, sl2-table.  Exit codes: 0 = all verifications pass, 1 = a
// mathematical assertion failed (with witness), 2 = input/usage error.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hopfkit/hopffile.hpp"
#include "hopfkit/integrals.hpp"
#include "hopfkit/modtrace.hpp"
#include "hopfkit/qgroup.hpp"
#include "hopfkit/sl2.hpp"

using namespace hopfkit;

namespace {

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> flags;
};

const char kUsage[] =
    "usage: hopfkit <command> [args]\n"
    "  check FILE\n"
    "  integral FILE [--side right|left] [--check]\n"
    "  cointegral FILE [--side left|right] [--check]\n"
    "  symint FILE --pivot EXPR [--side right|left]\n"
    "  comodulus FILE\n"
    "  modtrace FILE [--pivot EXPR] [--verify full|sample=N] [--seed S]\n"
    "  qgroup --type T --rank R --p P [--word \"i j ...\"] [--out FILE]\n"
    "  sl2-table --p P [--eta zeta0inv|unit]\n";

Args parse_args(int argc, char** argv, int from) {
  Args a;
  for (int i = from; i < argc; ++i) {
    std::string s = argv[i];
    if (s.rfind("--", 0) == 0) {
      std::string key = s.substr(2);
      // boolean flags take no value
      if (key == "check") {
        a.flags[key] = "1";
      } else {
        if (i + 1 >= argc)
          throw std::invalid_argument("flag --" + key + " needs a value");
        a.flags[key] = argv[++i];
      }
    } else {
      a.positional.push_back(s);
    }
  }
  return a;
}

std::string flag_or(const Args& a, const std::string& key,
                    const std::string& dflt) {
  auto it = a.flags.find(key);
  return it == a.flags.end() ? dflt : it->second;
}

HopfAlgebra load(const Args& a) {
  if (a.positional.empty())
    throw std::invalid_argument("missing input file");
  return read_hopf_file(a.positional[0]);
}

// (mu (x) id) Delta(x) = mu(x) 1 (right) / (id (x) mu) Delta(x) = mu(x) 1
// (left), re-asserted on every basis element.
bool integral_relation_holds(const HopfAlgebra& H, const Vec& mu, Side side) {
  const FieldSpec& F = H.field();
  const size_t n = H.dim();
  for (size_t i = 0; i < n; ++i) {
    Vec acc = vec_zero(F, n);
    for (const auto& [jk, c] : H.coproduct(H.basis_elem(i))) {
      size_t j = jk / n, k = jk % n;
      if (side == Side::Right)
        acc[k] += c * mu[j];
      else
        acc[j] += c * mu[k];
    }
    if (acc != vec_scale(mu[i], H.unit())) return false;
  }
  return true;
}

// x c = eps(x) c (left) / c x = eps(x) c (right) on every basis element.
bool cointegral_relation_holds(const HopfAlgebra& H, const Vec& c, Side side) {
  for (size_t i = 0; i < H.dim(); ++i) {
    Vec b = H.basis_elem(i);
    Vec prod = side == Side::Left ? H.multiply(b, c) : H.multiply(c, b);
    if (prod != vec_scale(H.counit(b), c)) return false;
  }
  return true;
}

Side side_flag(const Args& a, Side dflt) {
  std::string s = flag_or(a, "side", dflt == Side::Right ? "right" : "left");
  if (s == "right") return Side::Right;
  if (s == "left") return Side::Left;
  throw std::invalid_argument("--side must be right or left");
}

int cmd_check(const Args& a) {
  HopfAlgebra H = load(a);
  AxiomReport rep = verify_axioms(H);
  std::cout << rep.text();
  return rep.ok ? 0 : 1;
}

int cmd_integral(const Args& a) {
  HopfAlgebra H = load(a);
  Side side = side_flag(a, Side::Right);
  Vec mu = side == Side::Right ? right_integral(H) : left_integral(H);
  std::cout << (side == Side::Right ? "right integral: " : "left integral: ")
            << H.form_str(mu) << "\n";
  if (a.flags.count("check")) {
    bool ok = integral_relation_holds(H, mu, side);
    std::cout << "check: " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) return 1;
  }
  return 0;
}

int cmd_cointegral(const Args& a) {
  HopfAlgebra H = load(a);
  Side side = side_flag(a, Side::Left);
  Vec c = cointegral(H, side);
  std::cout << (side == Side::Left ? "left cointegral: "
                                   : "right cointegral: ")
            << H.element_str(c) << "\n";
  if (a.flags.count("check")) {
    bool ok = cointegral_relation_holds(H, c, side);
    std::cout << "check: " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) return 1;
  }
  return 0;
}

int cmd_symint(const Args& a) {
  HopfAlgebra H = load(a);
  auto it = a.flags.find("pivot");
  if (it == a.flags.end())
    throw std::invalid_argument("symint requires --pivot EXPR");
  Vec g = H.parse_element(it->second);
  std::string why;
  if (!H.verify_pivot(g, &why))
    throw std::invalid_argument("invalid pivot: " + why);
  Side side = side_flag(a, Side::Right);
  Vec mu = side == Side::Right ? right_integral(H) : left_integral(H);
  Vec mug = symmetrise(H, mu, g, side);
  std::cout << "symmetrised integral: " << H.form_str(mug) << "\n";
  return 0;
}

int cmd_comodulus(const Args& a) {
  HopfAlgebra H = load(a);
  std::cout << "comodulus: " << H.element_str(comodulus(H)) << "\n";
  return 0;
}

int cmd_modtrace(const Args& a) {
  HopfAlgebra H = load(a);
  Vec g;
  if (a.flags.count("pivot")) {
    g = H.parse_element(a.flags.at("pivot"));
    std::string why;
    if (!H.verify_pivot(g, &why))
      throw std::invalid_argument("invalid pivot: " + why);
  } else {
    g = H.require_pivot();
  }
  if (!is_unimodular(H)) {
    std::cerr << "error: not unimodular\n";
    return 2;
  }
  size_t samples = 0;
  std::string verify = flag_or(a, "verify", "full");
  if (verify.rfind("sample=", 0) == 0)
    samples = std::stoul(verify.substr(7));
  else if (verify != "full")
    throw std::invalid_argument("--verify must be full or sample=N");
  uint64_t seed = std::stoull(flag_or(a, "seed", "0"));

  Vec mug = symmetrise(H, right_integral(H), g, Side::Right);
  std::cout << "symmetrised integral: " << H.form_str(mug) << "\n";
  SymmetricForm t(H, mug);
  bool all = true;
  for (TraceSide side : {TraceSide::Left, TraceSide::Right}) {
    VerdictReport r = verify_partial_trace(H, t, side, samples, seed);
    std::cout << "partial trace ("
              << (side == TraceSide::Left ? "left" : "right")
              << "): " << (r.pass ? "PASS" : "FAIL");
    if (!r.pass) std::cout << "  witness: " << r.witness;
    std::cout << "\n";
    all = all && r.pass;
  }
  std::cout << "unibalanced: " << (is_unibalanced(H, g) ? "true" : "false")
            << "\n";
  return all ? 0 : 1;
}

int cmd_qgroup(const Args& a) {
  if (!a.flags.count("type") || !a.flags.count("rank") || !a.flags.count("p"))
    throw std::invalid_argument("qgroup requires --type, --rank and --p");
  std::string type = a.flags.at("type");
  if (type.size() != 1)
    throw std::invalid_argument("--type must be a single letter");
  CartanDatum d = CartanDatum::make(type[0],
                                    unsigned(std::stoul(a.flags.at("rank"))));
  std::vector<int> word;
  if (a.flags.count("word")) {
    std::istringstream ws(a.flags.at("word"));
    int x;
    while (ws >> x) word.push_back(x);
  } else {
    word = default_reduced_word(d);
  }
  UqAlgebra uq(d, word, unsigned(std::stoul(a.flags.at("p"))));
  std::cout << "dim: " << uq.dim() << "\n";
  CheckReport rep = uq.closed_form_checks();
  std::cout << rep.text();
  if (a.flags.count("out")) {
    write_hopf_file(uq.hopf(), a.flags.at("out"));
    std::cout << "wrote " << a.flags.at("out") << "\n";
  }
  return rep.ok ? 0 : 1;
}

int cmd_sl2_table(const Args& a) {
  if (!a.flags.count("p"))
    throw std::invalid_argument("sl2-table requires --p");
  std::string eta = flag_or(a, "eta", "zeta0inv");
  EtaChoice choice;
  if (eta == "zeta0inv")
    choice = EtaChoice::Zeta0Inv;
  else if (eta == "unit")
    choice = EtaChoice::Unit;
  else
    throw std::invalid_argument("--eta must be zeta0inv or unit");
  Sl2Catalog cat(unsigned(std::stoul(a.flags.at("p"))));
  cat.sym_integral_values();  // asserts the closed-form value table
  std::cout << Sl2Catalog::trace_table_text(cat.trace_table(choice));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << kUsage;
    return 2;
  }
  std::string cmd = argv[1];
  try {
    Args a = parse_args(argc, argv, 2);
    if (cmd == "check") return cmd_check(a);
    if (cmd == "integral") return cmd_integral(a);
    if (cmd == "cointegral") return cmd_cointegral(a);
    if (cmd == "symint") return cmd_symint(a);
    if (cmd == "comodulus") return cmd_comodulus(a);
    if (cmd == "modtrace") return cmd_modtrace(a);
    if (cmd == "qgroup") return cmd_qgroup(a);
    if (cmd == "sl2-table") return cmd_sl2_table(a);
    std::cerr << "unknown command: " << cmd << "\n" << kUsage;
    return 2;
  } catch (const TraceError& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return 1;
  } catch (const HopfError& e) {
    // parse errors, unsupported parameters, missing pivots, hypothesis
    // violations: input/usage problems.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
