#include "polysize/eval.h"

#include <pthread.h>

#include <exception>

#include "polysize/overload.h"

namespace polysize {

struct Interpreter::Scope {
  struct Entry {
    const FunDef* def = nullptr;  // null for externs
    std::string extern_name;
  };
  std::map<std::string, Entry> functions;
  std::shared_ptr<Scope> parent;

  // Returns the entry and the scope that defines it.
  std::pair<const Entry*, std::shared_ptr<Scope>> find(
      const std::string& name, const std::shared_ptr<Scope>& self) const {
    auto it = functions.find(name);
    if (it != functions.end()) return {&it->second, self};
    if (parent) return parent->find(name, parent);
    return {nullptr, nullptr};
  }
};

namespace {

using Scope = Interpreter::Scope;

class Machine {
 public:
  Machine(const EvalOptions& options,
          const std::map<std::string, ExternCallback>& externs, Heap& heap,
          std::uint64_t& steps)
      : options_(options), externs_(externs), heap_(heap), steps_(steps) {}

  Value eval(const Expr& e, const Store& s, const std::shared_ptr<Scope>& sc) {
    if (++steps_ > options_.budget)
      throw EvalError("BudgetExhausted",
                      "step budget of " + std::to_string(options_.budget) +
                          " exhausted",
                      e.pos);
    return std::visit(
        Overload{
            [&](const IntConst& x) { return Value::from_int(x.value); },
            [&](const Nil&) { return Value::null(); },
            [&](const Var& x) {
              auto it = s.find(x.name);
              if (it == s.end())
                throw EvalError("StuckEvaluation",
                                "unbound variable '" + x.name + "'", e.pos);
              return it->second;
            },
            [&](const BinOp& x) {
              Value a = eval(*x.lhs, s, sc);
              Value b = eval(*x.rhs, s, sc);
              if (!a.is_int() || !b.is_int())
                throw EvalError("StuckEvaluation",
                                std::string("operands of ") +
                                    to_string(x.op) + " must be integers",
                                e.pos);
              return Value::from_int(arith(x.op, a.integer, b.integer, e.pos));
            },
            [&](const Cons& x) {
              Value hd = eval(*x.head, s, sc);
              Value tl = eval(*x.tail, s, sc);
              return Value::location(heap_.alloc(hd, tl));
            },
            [&](const FunApp& x) {
              std::vector<Value> args;
              args.reserve(x.args.size());
              for (const auto& a : x.args) args.push_back(eval(*a, s, sc));
              return apply(x.callee, args, sc, e.pos);
            },
            [&](const Let& x) {
              std::map<Location, Cell> snapshot;
              if (options_.debug_assert) snapshot = guard(*x.body, x.binder, s);
              Value v = eval(*x.bound, s, sc);
              if (options_.debug_assert) verify(snapshot, e.pos);
              Store inner = s;
              inner[x.binder] = v;
              return eval(*x.body, inner, sc);
            },
            [&](const If& x) {
              Value c = eval(*x.cond, s, sc);
              if (!c.is_int())
                throw EvalError("StuckEvaluation",
                                "if condition must be an integer", e.pos);
              return eval(c.integer != 0 ? *x.then_branch : *x.else_branch, s,
                          sc);
            },
            [&](const Match& x) {
              Value l = eval(*x.scrutinee, s, sc);
              if (l.is_null()) return eval(*x.nil_branch, s, sc);
              if (!l.is_loc())
                throw EvalError("StuckEvaluation",
                                "match on an integer", e.pos);
              if (!heap_.contains(l.loc))
                throw EvalError("StuckEvaluation",
                                "match on a dangling location", e.pos);
              Cell cell = heap_.at(l.loc);
              Store inner = s;
              inner[x.head_binder] = cell.hd;
              inner[x.tail_binder] = cell.tl;
              return eval(*x.cons_branch, inner, sc);
            },
            [&](const LetFun& x) {
              auto inner = std::make_shared<Scope>();
              inner->parent = sc;
              inner->functions[x.def->name] = {x.def.get(), {}};
              return eval(*x.body, s, inner);
            },
            [&](const LetExtern& x) {
              auto inner = std::make_shared<Scope>();
              inner->parent = sc;
              inner->functions[x.decl.name] = {nullptr, x.decl.name};
              return eval(*x.body, s, inner);
            },
        },
        e.node);
  }

  Value apply(const std::string& name, const std::vector<Value>& args,
              const std::shared_ptr<Scope>& sc, SourcePos pos) {
    auto [entry, owner] = sc->find(name, sc);
    if (!entry)
      throw EvalError("UnknownFunction", "unknown function '" + name + "'",
                      pos);
    if (!entry->def) {
      auto it = externs_.find(entry->extern_name);
      if (it == externs_.end())
        throw EvalError("MissingExtern",
                        "no implementation for extern '" + name + "'", pos);
      return it->second(args, heap_);
    }
    const FunDef& def = *entry->def;
    if (def.params.size() != args.size())
      throw EvalError("StuckEvaluation",
                      "function '" + name + "' expects " +
                          std::to_string(def.params.size()) + " arguments",
                      pos);
    if (++depth_ > options_.max_depth)
      throw EvalError("BudgetExhausted", "recursion depth limit reached", pos);
    Store frame;
    for (std::size_t i = 0; i < args.size(); ++i) frame[def.params[i]] = args[i];
    Value v = eval(*def.body, frame, owner);
    --depth_;
    return v;
  }

 private:
  static std::int64_t arith(BinOpKind op, std::int64_t a, std::int64_t b,
                            SourcePos pos) {
    std::int64_t r = 0;
    switch (op) {
      case BinOpKind::kAdd:
        if (__builtin_add_overflow(a, b, &r))
          throw EvalError("IntegerOverflow", "addition overflows", pos);
        return r;
      case BinOpKind::kSub:
        if (__builtin_sub_overflow(a, b, &r))
          throw EvalError("IntegerOverflow", "subtraction overflows", pos);
        return r;
      case BinOpKind::kDiv:
      case BinOpKind::kMod:
        if (b == 0) throw EvalError("DivByZero", "division by zero", pos);
        if (a == INT64_MIN && b == -1) {
          if (op == BinOpKind::kMod) return 0;
          throw EvalError("IntegerOverflow", "division overflows", pos);
        }
        return op == BinOpKind::kDiv ? a / b : a % b;
    }
    return 0;
  }

  std::map<Location, Cell> guard(const Expr& body, const std::string& binder,
                                 const Store& s) {
    std::map<Location, Cell> snapshot;
    for (const auto& x : free_variables(body)) {
      if (x == binder) continue;
      auto it = s.find(x);
      if (it == s.end()) continue;
      for (Location l : footprint(heap_, it->second))
        snapshot.emplace(l, heap_.at(l));
    }
    return snapshot;
  }

  void verify(const std::map<Location, Cell>& snapshot, SourcePos pos) {
    for (const auto& [l, cell] : snapshot)
      if (!heap_.contains(l) || !(heap_.at(l) == cell))
        throw EvalError("BenignSharingViolated",
                        "let-bound evaluation changed a cell reachable from "
                        "the continuation",
                        pos);
  }

  const EvalOptions& options_;
  const std::map<std::string, ExternCallback>& externs_;
  Heap& heap_;
  std::uint64_t& steps_;
  std::uint64_t depth_ = 0;
};

struct ThreadJob {
  const std::function<Value()>* body;
  Value result;
  std::exception_ptr error;
};

void* thread_main(void* arg) {
  auto* job = static_cast<ThreadJob*>(arg);
  try {
    job->result = (*job->body)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

constexpr std::size_t kStackBytes = std::size_t{1} << 30;

}  // namespace

Interpreter::Interpreter(const Program& program, EvalOptions options,
                         std::map<std::string, ExternCallback> externs)
    : program_(program),
      options_(options),
      externs_(std::move(externs)),
      globals_(std::make_shared<Scope>()) {
  for (const auto& ext : program_.externs)
    globals_->functions[ext.name] = {nullptr, ext.name};
  for (const auto& f : program_.functions)
    globals_->functions[f->name] = {f.get(), {}};
}

Value Interpreter::run(const std::function<Value()>& body) {
  ThreadJob job{&body, {}, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kStackBytes);
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, thread_main, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    // Fall back to the calling thread.
    return body();
  }
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
  return job.result;
}

Value Interpreter::call(const std::string& function,
                        const std::vector<Value>& args, Heap& heap) {
  steps_ = 0;
  return run([&] {
    Machine m(options_, externs_, heap, steps_);
    return m.apply(function, args, globals_, {});
  });
}

Value Interpreter::evaluate(const ExprPtr& e, const Store& s, Heap& heap) {
  steps_ = 0;
  return run([&] {
    Machine m(options_, externs_, heap, steps_);
    return m.eval(*e, s, globals_);
  });
}

Value Interpreter::run_main(Heap& heap) {
  if (!program_.main)
    throw EvalError("NoMain", "the program has no main expression");
  return evaluate(program_.main, {}, heap);
}

}  // namespace polysize
