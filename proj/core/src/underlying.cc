#include "polysize/underlying.h"

#include <algorithm>
#include <functional>
#include <set>

#include "polysize/overload.h"

namespace polysize {

UType UType::list(UType elem) {
  return UType(ListT{std::make_shared<const UType>(std::move(elem))});
}

bool operator==(const UType& a, const UType& b) {
  if (a.is_int()) return b.is_int();
  if (a.is_var()) return b.is_var() && a.var_name() == b.var_name();
  return b.is_list() && a.elem() == b.elem();
}

std::string UType::to_string() const {
  if (is_int()) return "Int";
  if (is_var()) return var_name();
  return "L(" + elem().to_string() + ")";
}

std::string UFunType::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out += " * ";
    out += params[i].to_string();
  }
  return out + " -> " + result.to_string();
}

UType erase(const SizedType& t) {
  if (t.is_int()) return UType::integer();
  if (t.is_var()) return UType::var(t.var_name());
  return UType::list(erase(t.elem()));
}

UFunType erase(const FirstOrderType& t) {
  UFunType out;
  for (const auto& p : t.params) out.params.push_back(erase(p));
  out.result = erase(t.result);
  return out;
}

SizedType with_sizes(const UType& t, const Polynomial& size) {
  if (t.is_int()) return SizedType::integer();
  if (t.is_var()) return SizedType::var(t.var_name());
  return SizedType::list(with_sizes(t.elem(), size), size);
}

namespace {

std::string letter_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "t" + std::to_string(i + 1);
}

// Union-find over type terms.
class Engine {
 public:
  enum class Kind { kVar, kInt, kList, kRigid };
  struct Term {
    Kind kind;
    int elem = -1;
    std::string name;
  };

  int fresh() { return add({Kind::kVar, -1, {}}); }
  int integer() { return add({Kind::kInt, -1, {}}); }
  int list(int elem) { return add({Kind::kList, elem, {}}); }
  int rigid(const std::string& name) { return add({Kind::kRigid, -1, name}); }

  int find(int t) {
    while (parent_[t] != t) {
      parent_[t] = parent_[parent_[t]];
      t = parent_[t];
    }
    return t;
  }
  const Term& term(int t) { return terms_[find(t)]; }

  std::string show(int t) {
    t = find(t);
    const Term& x = terms_[t];
    switch (x.kind) {
      case Kind::kInt: return "Int";
      case Kind::kRigid: return x.name;
      case Kind::kList: return "L(" + show(x.elem) + ")";
      case Kind::kVar: return "'t" + std::to_string(t);
    }
    return "?";
  }

  bool occurs(int v, int t) {
    t = find(t);
    if (t == v) return true;
    if (terms_[t].kind == Kind::kList) return occurs(v, terms_[t].elem);
    return false;
  }

  void unify(int a, int b, SourcePos pos) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    Term ta = terms_[a];
    Term tb = terms_[b];
    if (ta.kind == Kind::kVar || tb.kind == Kind::kVar) {
      int v = ta.kind == Kind::kVar ? a : b;
      int other = v == a ? b : a;
      if (occurs(v, other))
        throw TypeError("OccursCheck",
                        "cannot construct the infinite type " + show(v) +
                            " = " + show(other),
                        pos);
      parent_[v] = other;
      return;
    }
    if (ta.kind == Kind::kList && tb.kind == Kind::kList) {
      parent_[a] = b;
      unify(ta.elem, tb.elem, pos);
      return;
    }
    if (ta.kind == tb.kind && ta.kind == Kind::kInt) {
      parent_[a] = b;
      return;
    }
    if (ta.kind == Kind::kRigid && tb.kind == Kind::kRigid &&
        ta.name == tb.name) {
      parent_[a] = b;
      return;
    }
    throw TypeError("UnificationFailure",
                    "cannot unify " + show(a) + " with " + show(b), pos);
  }

  void collect_vars(int t, std::set<int>& out) {
    t = find(t);
    if (terms_[t].kind == Kind::kVar) out.insert(t);
    if (terms_[t].kind == Kind::kList) collect_vars(terms_[t].elem, out);
  }

  int from_utype(const UType& t, std::map<std::string, int>& vars,
                 bool rigid_vars) {
    if (t.is_int()) return integer();
    if (t.is_list()) return list(from_utype(t.elem(), vars, rigid_vars));
    auto it = vars.find(t.var_name());
    if (it != vars.end()) return it->second;
    int v = rigid_vars ? rigid(t.var_name()) : fresh();
    vars[t.var_name()] = v;
    return v;
  }

  UType to_utype(int t, const std::function<std::string(int)>& name_var) {
    t = find(t);
    const Term& x = terms_[t];
    switch (x.kind) {
      case Kind::kInt: return UType::integer();
      case Kind::kRigid: return UType::var(x.name);
      case Kind::kVar: return UType::var(name_var(t));
      case Kind::kList: {
        int e = x.elem;
        return UType::list(to_utype(e, name_var));
      }
    }
    return UType::integer();
  }

 private:
  int add(Term t) {
    terms_.push_back(std::move(t));
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(terms_.size()) - 1;
  }
  std::vector<Term> terms_;
  std::vector<int> parent_;
};

struct FunEntry {
  std::vector<int> params;
  int result = -1;
  std::set<int> generic;  // representatives instantiated afresh per use
};

class Inferencer {
 public:
  explicit Inferencer(NodeTypes* record = nullptr) : record_(record) {}

  Engine& engine() { return eng_; }

  void add_global(const std::string& name, FunEntry entry) {
    globals_[name] = std::move(entry);
  }

  FunEntry scheme_entry(const UFunType& t, bool rigid) {
    std::map<std::string, int> vars;
    FunEntry e;
    for (const auto& p : t.params) e.params.push_back(eng_.from_utype(p, vars, rigid));
    e.result = eng_.from_utype(t.result, vars, rigid);
    if (!rigid)
      for (const auto& [_, v] : vars) e.generic.insert(eng_.find(v));
    return e;
  }

  FunEntry mono_entry(std::size_t arity) {
    FunEntry e;
    for (std::size_t i = 0; i < arity; ++i) e.params.push_back(eng_.fresh());
    e.result = eng_.fresh();
    return e;
  }

  // Infers a definition against `entry` (its parameter and result terms).
  void infer_def(const FunDef& def, const FunEntry& entry) {
    std::map<std::string, int> env;
    for (std::size_t i = 0; i < def.params.size(); ++i)
      env[def.params[i]] = entry.params[i];
    int r = infer(*def.body, env);
    eng_.unify(r, entry.result, def.body->pos);
  }

  void generalize(FunEntry& entry) {
    std::set<int> mono = monomorphic_vars();
    std::set<int> vars;
    for (int p : entry.params) eng_.collect_vars(p, vars);
    eng_.collect_vars(entry.result, vars);
    entry.generic.clear();
    for (int v : vars)
      if (!mono.count(v)) entry.generic.insert(v);
  }

  std::vector<FunEntry*> in_progress;

 private:
  std::set<int> monomorphic_vars() {
    std::set<int> out;
    for (FunEntry* e : in_progress) {
      for (int p : e->params) eng_.collect_vars(p, out);
      eng_.collect_vars(e->result, out);
    }
    return out;
  }

  int instantiate(int t, const std::set<int>& generic, std::map<int, int>& s) {
    t = eng_.find(t);
    const auto& term = eng_.term(t);
    if (term.kind == Engine::Kind::kVar && generic.count(t)) {
      auto it = s.find(t);
      if (it != s.end()) return it->second;
      int v = eng_.fresh();
      s[t] = v;
      return v;
    }
    if (term.kind == Engine::Kind::kList) {
      int e = term.elem;
      return eng_.list(instantiate(e, generic, s));
    }
    return t;
  }

  const FunEntry* lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    auto g = globals_.find(name);
    return g == globals_.end() ? nullptr : &g->second;
  }

  int infer(const Expr& e, std::map<std::string, int>& env) {
    int t = infer_node(e, env);
    if (record_) pending_.emplace_back(&e, t);
    return t;
  }

  int infer_node(const Expr& e, std::map<std::string, int>& env) {
    auto sub = [&](const ExprPtr& x) { return infer(*x, env); };
    auto scoped = [&](const ExprPtr& x,
                      std::vector<std::pair<std::string, int>> binds) {
      std::map<std::string, int> inner = env;
      for (auto& [n, t] : binds) inner[n] = t;
      return infer(*x, inner);
    };
    return std::visit(
        Overload{
            [&](const IntConst&) { return eng_.integer(); },
            [&](const BinOp& x) {
              eng_.unify(sub(x.lhs), eng_.integer(), x.lhs->pos);
              eng_.unify(sub(x.rhs), eng_.integer(), x.rhs->pos);
              return eng_.integer();
            },
            [&](const Nil&) { return eng_.list(eng_.fresh()); },
            [&](const Var& x) {
              auto it = env.find(x.name);
              if (it == env.end())
                throw TypeError("UnboundVariable",
                                "unbound variable '" + x.name + "'", e.pos);
              return it->second;
            },
            [&](const Cons& x) {
              int h = sub(x.head);
              int t = sub(x.tail);
              eng_.unify(t, eng_.list(h), e.pos);
              return t;
            },
            [&](const FunApp& x) {
              const FunEntry* f = lookup(x.callee);
              if (!f)
                throw TypeError("UnknownFunction",
                                "unknown function '" + x.callee + "'", e.pos);
              if (f->params.size() != x.args.size())
                throw TypeError("ArityMismatch",
                                "function '" + x.callee + "' expects " +
                                    std::to_string(f->params.size()) +
                                    " arguments, got " +
                                    std::to_string(x.args.size()),
                                e.pos);
              std::map<int, int> s;
              std::vector<int> params;
              for (int p : f->params)
                params.push_back(instantiate(p, f->generic, s));
              int result = instantiate(f->result, f->generic, s);
              for (std::size_t i = 0; i < x.args.size(); ++i)
                eng_.unify(sub(x.args[i]), params[i], x.args[i]->pos);
              return result;
            },
            [&](const Let& x) {
              int b = sub(x.bound);
              return scoped(x.body, {{x.binder, b}});
            },
            [&](const If& x) {
              eng_.unify(sub(x.cond), eng_.integer(), x.cond->pos);
              int t = sub(x.then_branch);
              eng_.unify(t, sub(x.else_branch), x.else_branch->pos);
              return t;
            },
            [&](const Match& x) {
              int a = eng_.fresh();
              int l = eng_.list(a);
              eng_.unify(sub(x.scrutinee), l, x.scrutinee->pos);
              int t = sub(x.nil_branch);
              int c = scoped(x.cons_branch,
                             {{x.head_binder, a}, {x.tail_binder, l}});
              eng_.unify(t, c, x.cons_branch->pos);
              return t;
            },
            [&](const LetFun& x) {
              const FunDef& def = *x.def;
              FunEntry entry;
              if (def.declared_type) {
                entry = scheme_entry(erase(*def.declared_type), false);
              } else {
                entry = mono_entry(def.params.size());
              }
              if (entry.params.size() != def.params.size())
                throw TypeError("ArityMismatch",
                                "annotation of '" + def.name +
                                    "' does not match its parameters",
                                def.pos);
              scopes_.emplace_back();
              if (def.declared_type) {
                scopes_.back()[def.name] = entry;
                FunEntry body_entry = scheme_entry(erase(*def.declared_type), true);
                infer_def(def, body_entry);
              } else {
                FunEntry& slot = scopes_.back()[def.name] = entry;
                in_progress.push_back(&slot);
                infer_def(def, slot);
                in_progress.pop_back();
                generalize(slot);
              }
              int t = infer(*x.body, env);
              scopes_.pop_back();
              return t;
            },
            [&](const LetExtern& x) {
              FunEntry entry = x.decl.type
                                   ? scheme_entry(erase(*x.decl.type), false)
                                   : mono_entry(x.decl.params.size());
              scopes_.emplace_back();
              scopes_.back()[x.decl.name] = entry;
              int t = infer(*x.body, env);
              scopes_.pop_back();
              return t;
            },
        },
        e.node);
  }

 public:
  // Resolves recorded terms once inference is complete.
  void flush_record() {
    if (!record_) return;
    std::map<int, std::string> names;
    auto name_var = [&](int v) {
      auto it = names.find(v);
      if (it != names.end()) return it->second;
      std::string n = "_" + std::to_string(names.size() + 1);
      names[v] = n;
      return n;
    };
    for (const auto& [node, t] : pending_)
      (*record_)[node] = eng_.to_utype(t, name_var);
    pending_.clear();
  }

  UFunType resolve(const FunEntry& entry) {
    std::map<int, std::string> names;
    auto name_var = [&](int v) {
      auto it = names.find(v);
      if (it != names.end()) return it->second;
      std::string n = letter_name(names.size());
      names[v] = n;
      return n;
    };
    UFunType out;
    for (int p : entry.params) out.params.push_back(eng_.to_utype(p, name_var));
    out.result = eng_.to_utype(entry.result, name_var);
    return out;
  }

 private:
  Engine eng_;
  std::map<std::string, FunEntry> globals_;
  std::vector<std::map<std::string, FunEntry>> scopes_;
  NodeTypes* record_;
  std::vector<std::pair<const Expr*, int>> pending_;
};

// Tarjan's algorithm; components come out callees first.
std::vector<std::vector<std::string>> call_graph_sccs(const Program& p) {
  std::map<std::string, std::vector<std::string>> edges;
  std::vector<std::string> order;
  for (const auto& f : p.functions) order.push_back(f->name);
  for (const auto& f : p.functions)
    for (const auto& c : callees(*f->body))
      if (p.find_function(c)) edges[f->name].push_back(c);

  std::map<std::string, int> index;
  std::map<std::string, int> low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> out;
  int counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : edges[v]) {
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end(), [&](const auto& a, const auto& b) {
        return std::find(order.begin(), order.end(), a) <
               std::find(order.begin(), order.end(), b);
      });
      out.push_back(std::move(comp));
    }
  };
  for (const auto& name : order)
    if (!index.count(name)) visit(name);
  return out;
}

void add_externs(Inferencer& inf, const Program& p) {
  for (const auto& ext : p.externs) {
    if (!ext.type)
      throw TypeError("MissingAnnotation",
                      "extern '" + ext.name + "' needs a type annotation",
                      ext.pos);
    if (ext.type->params.size() != ext.params.size())
      throw TypeError("ArityMismatch",
                      "annotation of '" + ext.name +
                          "' does not match its parameters",
                      ext.pos);
    inf.add_global(ext.name, inf.scheme_entry(erase(*ext.type), false));
  }
}

}  // namespace

std::map<std::string, UFunType> infer_underlying(const Program& p) {
  Inferencer inf;
  add_externs(inf, p);
  std::map<std::string, UFunType> out;
  for (const auto& comp : call_graph_sccs(p)) {
    std::map<std::string, FunEntry> entries;
    for (const auto& name : comp) {
      const FunDef* f = p.find_function(name);
      entries[name] = inf.mono_entry(f->params.size());
      inf.add_global(name, entries[name]);
    }
    for (auto& [name, entry] : entries) inf.in_progress.push_back(&entry);
    for (const auto& name : comp)
      inf.infer_def(*p.find_function(name), entries[name]);
    inf.in_progress.clear();
    for (auto& [name, entry] : entries) {
      inf.generalize(entry);
      inf.add_global(name, entry);
      out[name] = inf.resolve(entry);
    }
  }
  return out;
}

NodeTypes infer_node_types(const FunDef& f, const FirstOrderType& declared,
                           const Signature& sigma) {
  NodeTypes out;
  Inferencer inf(&out);
  for (const auto& [name, type] : sigma)
    inf.add_global(name, inf.scheme_entry(erase(type), false));
  if (declared.params.size() != f.params.size())
    throw TypeError("ArityMismatch",
                    "annotation of '" + f.name +
                        "' does not match its parameters",
                    f.pos);
  FunEntry self = inf.scheme_entry(erase(declared), true);
  inf.infer_def(f, self);
  inf.flush_record();
  return out;
}

TypeTemplate annotate_with_variables(const UFunType& t) {
  TypeTemplate out;
  int k = 0;
  for (const auto& p : t.params)
    for (const UType* x = &p; x->is_list(); x = &x->elem()) ++k;
  int next_n = 0;
  std::function<SizedType(const UType&)> input = [&](const UType& u) {
    if (!u.is_list()) return with_sizes(u, Polynomial{});
    std::string name = k == 1 ? "n" : "n" + std::to_string(++next_n);
    out.size_vars.push_back(name);
    SizedType elem = input(u.elem());
    return SizedType::list(elem, Polynomial::variable(name));
  };
  for (const auto& p : t.params) out.type.params.push_back(input(p));
  int next_p = 0;
  std::function<SizedType(const UType&)> output = [&](const UType& u) {
    if (!u.is_list()) return with_sizes(u, Polynomial{});
    std::string name = "p" + std::to_string(++next_p);
    out.placeholders.push_back(name);
    SizedType elem = output(u.elem());
    return SizedType::list(elem, Polynomial::variable(name));
  };
  out.type.result = output(t.result);
  return out;
}

}  // namespace polysize
