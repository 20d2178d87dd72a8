// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 when
// every criterion passes except those listed as known conflicts.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "polysize/checker.h"
#include "polysize/desugar.h"
#include "polysize/entailment.h"
#include "polysize/eval.h"
#include "polysize/inference.h"
#include "polysize/inhabitant.h"
#include "polysize/interpolate.h"
#include "polysize/nca.h"
#include "testing.h"

namespace polysize {
namespace {

using testing::corpus_names;
using testing::corpus_program;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    else detail += "; " + what;
    pass = false;
  }
};

Polynomial P(std::string_view s) { return Polynomial::parse(s); }

Outcome headline_types() {
  Outcome o;
  struct Case {
    const char* file;
    const char* function;
    const char* type;
  };
  const Case cases[] = {
      {"cprod", "append", "L(a,n) * L(a,m) -> L(a, n+m)"},
      {"cprod", "pairs", "a * L(a,n) -> L(L(a,2), n)"},
      {"cprod", "cprod", "L(a,n) * L(a,m) -> L(L(a,2), n*m)"},
      {"sqdiff", "sqdiff", "L(a,n) * L(a,m) -> L(L(a,2), n^2 + m^2 - 2*n*m)"},
  };
  for (const auto& c : cases) {
    Program p = desugar(corpus_program(c.file));
    FirstOrderType t = FirstOrderType::parse(c.type);
    Signature sigma = program_signature(p);
    sigma[c.function] = t;
    const FunDef& f = *p.find_function(c.function);
    o.require(check_function(f, t, sigma).accepted(),
              std::string(c.function) + " rejected");
    FirstOrderType bumped = t;
    bumped.result = SizedType::list(t.result.elem(),
                                    t.result.size() + Polynomial::constant(1));
    sigma[c.function] = bumped;
    o.require(!check_function(f, bumped, sigma).accepted(),
              std::string(c.function) + " accepted with constant + 1");
  }
  if (o.pass) o.detail = "4 types accepted, 4 perturbations rejected";
  return o;
}

Outcome cprod_table() {
  Outcome o;
  Program p = desugar(corpus_program("cprod"));
  Interpreter interp(p);
  TypeTemplate tmpl = annotate_with_variables(infer_underlying(p).at("cprod"));
  struct Row {
    Node node;
    const char* l1;
    const char* l2;
    const char* out;
    const char* p1;
    const char* p2;
  };
  const Row rows[] = {
      {{0, 0}, "[]", "[]", "[]", "0", "?"},
      {{1, 0}, "[0]", "[]", "[]", "0", "?"},
      {{0, 1}, "[]", "[0]", "[]", "0", "?"},
      {{1, 1}, "[0]", "[1]", "[[0,1]]", "1", "2"},
      {{2, 1}, "[0,1]", "[2]", "[[0,2],[1,2]]", "2", "2"},
      {{1, 2}, "[0]", "[1,2]", "[[0,1],[0,2]]", "2", "2"},
  };
  std::vector<Node> nodes;
  std::vector<Rational> outer;
  for (const auto& r : rows) {
    Heap h;
    std::int64_t next = 0;
    std::map<std::string, std::int64_t> sizes{{tmpl.size_vars[0], r.node[0]},
                                              {tmpl.size_vars[1], r.node[1]}};
    Value a = generate_input(tmpl.type.params[0], sizes, next, h);
    Value b = generate_input(tmpl.type.params[1], sizes, next, h);
    std::string l1 = read_value(a, h).to_string();
    std::string l2 = read_value(b, h).to_string();
    Value out = interp.call("cprod", {a, b}, h);
    auto s = measure_sizes(out, h, 2);
    std::ostringstream got;
    got << l1 << " " << l2 << " " << read_value(out, h).to_string() << " "
        << s[0].to_string() << " " << s[1].to_string();
    std::ostringstream want;
    want << r.l1 << " " << r.l2 << " " << r.out << " " << r.p1 << " " << r.p2;
    o.require(got.str() == want.str(), "row got " + got.str());
    nodes.push_back(r.node);
    outer.push_back(Rational(static_cast<long>(s[0].length)));
  }
  Polynomial p1 = derive_polynomial(2, {"n", "m"}, nodes, outer);
  o.require(p1 == P("n*m"), "outer polynomial " + p1.to_string());
  if (o.pass) o.detail = "6 rows exact, p1 = " + p1.to_string();
  return o;
}

Outcome nonlinear_suite() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  Program p = corpus_program("nonlinear");
  ProgramInference inf = infer_program(p);
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start).count();
  o.require(inf.success(), "inference failed");
  if (!o.pass) return o;
  const FirstOrderType& t = inf.signature.at("nonlinear");
  o.require(t.result.size() == P("4*n1^2 + 4*n2^2 + 9*n1*n2"),
            "got " + t.to_string());
  Program core = desugar(p);
  o.require(check_function(*core.find_function("nonlinear"), t, inf.signature)
                .accepted(),
            "checker rejects the inferred type");
  o.require(secs < 10, "took " + std::to_string(secs) + " s");
  if (o.pass) {
    std::ostringstream d;
    d << t.result.size().to_string() << " in " << secs << " s";
    o.detail = d.str();
  }
  return o;
}

Outcome progression() {
  Outcome o;
  Program p = corpus_program("progression");
  ProgramInference inf = infer_program(p);
  o.require(inf.success(), "inference failed");
  if (!o.pass) return o;
  const FirstOrderType& t = inf.signature.at("progression");
  o.require(t.result.size() == P("1/2*n^2 + 1/2*n"), "got " + t.to_string());
  Interpreter interp(p);
  Heap h;
  Value v = build_value(Reading::parse("[1,2,3]"), h);
  std::string out = read_value(interp.call("progression", {v}, h), h).to_string();
  o.require(out == "[3,2,3,1,2,3]", "evaluated to " + out);
  if (o.pass) o.detail = t.to_string() + "; progression([1,2,3]) = " + out;
  return o;
}

Outcome nca_machinery() {
  Outcome o;
  o.require(required_measurements(2, 3) == 10, "C(5,3) != 10");
  NodeConfiguration c = nca_nodes(3, 2, {}, {"x", "y", "z"}, 2);
  o.require(c.nodes.size() == 10 && c.planes.size() == 3 &&
                c.planes[0].count == 6 && c.planes[1].count == 3 &&
                c.planes[2].count == 1,
            "3-D plane structure is not 6+3+1");
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 12);
  const std::vector<std::string> all{"x", "y", "z"};
  int recovered = 0, total = 0;
  for (int k = 1; k <= 3; ++k)
    for (int d = 0; d <= 4; ++d) {
      std::vector<std::string> vars(all.begin(), all.begin() + k);
      NodeConfiguration cfg = nca_nodes_growing(k, d, {}, vars, 0);
      auto basis = monomials_up_to(vars, d);
      for (int i = 0; i < 500; ++i) {
        Polynomial q;
        for (const auto& m : basis)
          q += Polynomial::term(Rational(num(rng), den(rng)), m);
        std::vector<Rational> values;
        for (const auto& n : cfg.nodes) {
          Valuation v;
          for (int j = 0; j < k; ++j) v[vars[j]] = static_cast<long>(n[j]);
          values.push_back(q.evaluate(v));
        }
        ++total;
        recovered += derive_polynomial(d, vars, cfg.nodes, values) == q;
      }
    }
  o.require(recovered == total, std::to_string(total - recovered) +
                                    " polynomials not recovered");
  if (o.pass)
    o.detail = "C(5,3)=10, planes 6+3+1, " + std::to_string(recovered) + "/" +
               std::to_string(total) + " recovered";
  return o;
}

Outcome node_search_bound() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3);
  const std::vector<std::string> vars{"x", "y"};
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    int d1 = deg(rng), d2 = deg(rng);
    Polynomial q;
    while (q.is_zero() || static_cast<int>(q.degree()) != d1) {
      q = Polynomial{};
      for (const auto& m : monomials_up_to(vars, d1))
        q += Polynomial::term(Rational(coef(rng)), m);
    }
    try {
      NodeConfiguration c = nca_nodes(2, d2, {q}, vars, d1 + d2);
      bool valid = c.nodes.size() == required_measurements(d2, 2);
      for (const auto& n : c.nodes)
        valid = valid && n[0] <= d1 + d2 && n[1] <= d1 + d2 &&
                q.evaluate({{"x", n[0]}, {"y", n[1]}}) != 0;
      o.require(valid, "invalid nodes for " + q.to_string());
      ok += valid;
    } catch (const InferenceError&) {
      o.require(false, "search failed for " + q.to_string() + " at d2 = " +
                           std::to_string(d2));
    }
  }
  if (o.pass) o.detail = std::to_string(ok) + "/100 searches inside [0..d1+d2]^2";
  return o;
}

Outcome decidability_fragment() {
  Outcome o;
  int equations = 0;
  for (const auto& name : corpus_names()) {
    ProgramReport r = check_program(corpus_program(name));
    for (const auto& f : r.functions) {
      o.require(f.fragment_violations == 0, f.name + " left the fragment");
      for (const auto& d : f.decisions)
        for (const auto& eq : d.obligation.d.equations) {
          ++equations;
          o.require(in_fragment(eq), "equation " + eq.to_string());
        }
    }
  }
  bool rejected = false;
  try {
    check_program(parse_program(
        testing::read_file(testing::fixture_path("e_h.shp"))));
  } catch (const RestrictionViolation& e) {
    rejected = e.scrutinee() == "l";
  }
  o.require(rejected, "e_H was not rejected");
  if (o.pass)
    o.detail = std::to_string(equations) +
               " constraint occurrences, all n - c; e_H rejected";
  return o;
}

Outcome soundness_smoke() {
  Outcome o;
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> size(0, 4);
  int checks = 0;
  for (const auto& name : corpus_names()) {
    Program p = desugar(corpus_program(name));
    ProgramReport report = check_program(p);
    Interpreter interp(replace_externs(p));
    for (const auto& fr : report.functions) {
      if (!fr.accepted() || !fr.type) continue;
      const FirstOrderType& t = *fr.type;
      std::map<std::string, SizedType> ground_types;
      for (const auto& param : t.params)
        for (const auto& a : param.type_vars()) ground_types[a] = SizedType::integer();
      for (const auto& a : t.result.type_vars()) ground_types[a] = SizedType::integer();
      for (int i = 0; i < 20; ++i) {
        std::map<std::string, std::int64_t> sizes;
        std::map<std::string, Polynomial> subst;
        for (const auto& v : t.param_size_vars()) {
          sizes[v] = size(rng);
          subst[v] = Polynomial::constant(Rational(static_cast<long>(sizes[v])));
        }
        Heap h;
        std::int64_t next = 0;
        std::vector<Value> args;
        for (const auto& param : t.params)
          args.push_back(generate_input(param, sizes, next, h));
        Value out = interp.call(fr.name, args, h);
        SizedType ground =
            t.result.substitute_sizes(subst).substitute_types(ground_types);
        o.require(models(out, h, ground).has_value(),
                  fr.name + " output does not model " + ground.to_string());
        auto spine = ground.spine_sizes();
        auto measured = measure_sizes(out, h, static_cast<int>(spine.size()));
        for (std::size_t j = 0; j < spine.size(); ++j) {
          if (!measured[j].known) continue;
          o.require(spine[j] == Polynomial::constant(
                                    Rational(static_cast<long>(measured[j].length))),
                    fr.name + " level size mismatch");
        }
        ++checks;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " evaluations modelled";
  return o;
}

Outcome inhabitants() {
  Outcome o;
  std::vector<std::string> recovered;
  for (const char* p : {"n", "n+1", "n^2", "2*n+3"}) {
    ExternDecl d;
    d.name = "g";
    d.params = {"l"};
    d.type = FirstOrderType::parse(std::string("L(a,n) -> L(a, ") + p + ")");
    FunDef f = synthesize_inhabitant(d);
    Program prog;
    prog.functions.push_back(std::make_shared<FunDef>(f));
    Interpreter interp(prog);
    Heap h;
    Value at_nil = interp.call("g", {Value::null()}, h);
    o.require(at_nil.is_null(), std::string("p = ") + p + " maps nil to " +
                                    read_value(at_nil, h).to_string());
    auto t = stabilized_candidate(prog, "g");
    bool same = t && t->result.size() == P(p);
    o.require(same, std::string("p = ") + p + " re-inferred as " +
                        (t ? t->result.size().to_string() : "nothing"));
    if (same) recovered.push_back(p);
  }
  if (o.pass) o.detail = "nil -> nil and p recovered for all four";
  else
    o.detail += " (p recovered for " + std::to_string(recovered.size()) + "/4)";
  return o;
}

Outcome entailment_oracle() {
  Outcome o;
  std::mt19937_64 rng(77);
  const std::vector<std::string> vars{"n", "m", "k"};
  std::uniform_int_distribution<int> c04(0, 4), coef(-3, 3), nd(0, 3), pick(0, 2);
  int holds = 0, fails = 0, vacuous = 0;
  for (int i = 0; i < 1000; ++i) {
    ConstraintSet d;
    std::map<std::string, std::set<int>> fixed;
    int count = nd(rng);
    for (int e = 0; e < count; ++e) {
      std::string v = vars[pick(rng)];
      int c = c04(rng);
      Polynomial eq = Polynomial::variable(v) - Polynomial::constant(c);
      if (rng() % 2) eq = -eq;
      d.equations.push_back(eq);
      fixed[v].insert(c);
    }
    auto random_goal = [&] {
      Polynomial p;
      for (const auto& m : monomials_up_to(vars, 3))
        if (rng() % 4 == 0) p += Polynomial::term(Rational(coef(rng)), m);
      return p;
    };
    Polynomial lhs = random_goal(), rhs = lhs;
    switch (i % 3) {
      case 0:
        rhs = random_goal();
        break;
      case 1:  // differs only by a multiple of a constrained variable
        if (!d.equations.empty()) rhs = lhs + d.equations[0] * random_goal();
        break;
      default:
        rhs = lhs + Polynomial::term(1, Monomial::var("m"));
        break;
    }
    Obligation ob;
    ob.d = d;
    ob.kind = GoalKind::kPolyEq;
    ob.lhs = lhs;
    ob.rhs = rhs;
    Verdict v = decide_entailment(ob);
    // Brute force over the cube [0..8]^3.
    bool any = false, all = true;
    for (int n = 0; n <= 8; ++n)
      for (int m = 0; m <= 8; ++m)
        for (int k = 0; k <= 8; ++k) {
          Valuation x{{"n", n}, {"m", m}, {"k", k}};
          bool sat = true;
          for (const auto& eq : d.equations) sat = sat && eq.evaluate(x) == 0;
          if (!sat) continue;
          any = true;
          all = all && lhs.evaluate(x) == rhs.evaluate(x);
        }
    Verdict oracle = !any ? Verdict::kVacuous : all ? Verdict::kHolds
                                                    : Verdict::kFails;
    if (v != oracle)
      o.require(false, "disagreement on " + ob.to_string());
    holds += oracle == Verdict::kHolds;
    fails += oracle == Verdict::kFails;
    vacuous += oracle == Verdict::kVacuous;
  }
  if (o.pass) {
    std::ostringstream s;
    s << "1000 agree (" << holds << " hold, " << fails << " fail, " << vacuous
      << " vacuous)";
    o.detail = s.str();
  }
  return o;
}

}  // namespace
}  // namespace polysize

int main() {
  using namespace polysize;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    // Known conflict between two clauses; reported, not counted.
    const char* conflict = nullptr;
  };
  const std::vector<Criterion> criteria{
      {1, "headline types checked, perturbations rejected", headline_types},
      {2, "cprod measurement table", cprod_table},
      {3, "nonlinear suite inferred and rechecked", nonlinear_suite},
      {4, "progression inferred with rational coefficients", progression},
      {5, "node configurations and exact interpolation", nca_machinery},
      {6, "node search within [0..d1+d2]^2", node_search_bound},
      {7, "decidable constraint fragment, e_H rejected", decidability_fragment},
      {8, "soundness at sampled points", soundness_smoke},
      {9, "extern inhabitants", inhabitants,
       "a polymorphic L(a,n) -> L(a,p) body that maps nil to nil has output "
       "size 0 at n = 0, so p(0) != 0 (n+1, 2n+3) cannot also be recovered"},
      {10, "entailment agrees with brute force", entailment_oracle},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL")
              << "  " << c.name << "  [" << o.detail << "] ("
              << static_cast<long>(ms) << " ms)";
    if (!o.pass && c.conflict)
      std::cout << "  known conflict: " << c.conflict;
    std::cout << "\n";
    if (!o.pass && !c.conflict) ++unexpected;
    if (o.pass && c.conflict) {
      std::cout << "  note: criterion " << c.id
                << " passed although a conflict is recorded\n";
    }
  }
  return unexpected == 0 ? 0 : 1;
}
