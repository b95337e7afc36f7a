// Copyright 2026 The invgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "learner.h"

#include <algorithm>
#include <functional>

#include "invgen/error.h"
#include "invgen/interpreter.h"
#include "invgen/logic.h"
#include "invgen/wp.h"

namespace invgen::internal {
namespace {

constexpr int kPositiveRuns = 60;
constexpr int kInputTries = 3000;
constexpr size_t kMaxPositives = 300;
constexpr int kRandomStates = 120;
constexpr int kMutantSources = 120;
constexpr int kMutantsPerSource = 2;
constexpr int64_t kRunFuel = 200;

// Replaces every occurrence of `from` by `to`, leaving quantifiers that bind
// a name of either term untouched.
Expr Replace(const Expr& e, const Expr& from, const Expr& to) {
  if (Equal(e, from)) return to;
  if (e->args().empty()) return e;
  if (e->is_quantifier()) {
    auto names = FreeVars(from);
    for (const auto& n : FreeVars(to)) names.insert(n);
    if (names.count(e->name())) return e;
  }
  std::vector<Expr> args;
  bool changed = false;
  for (const auto& a : e->args()) {
    args.push_back(Replace(a, from, to));
    changed |= args.back() != a;
  }
  return changed ? WithArgs(e, std::move(args)) : e;
}

// Like Replace, but only inside quantifier bounds.
Expr ReplaceInBounds(const Expr& e, const Expr& from, const Expr& to) {
  if (e->args().empty()) return e;
  std::vector<Expr> args;
  bool changed = false;
  for (size_t i = 0; i < e->args().size(); ++i) {
    const Expr& a = e->arg(i);
    Expr r = e->is_quantifier() && i < 2 ? Replace(a, from, to)
                                         : ReplaceInBounds(a, from, to);
    changed |= r != a;
    args.push_back(std::move(r));
  }
  return changed ? WithArgs(e, std::move(args)) : e;
}

void CollectQuantifiers(const Expr& e, std::vector<Expr>& out) {
  if (e->is_quantifier()) out.push_back(e);
  for (const auto& a : e->args()) CollectQuantifiers(a, out);
}

void CollectLiterals(const Expr& e, std::set<int64_t>& out) {
  if (!e) return;
  if (e->is_int_lit()) out.insert(e->value());
  for (const auto& a : e->args()) CollectLiterals(a, out);
}

void CollectStmtLiterals(const std::vector<Stmt>& stmts,
                         std::set<int64_t>& out) {
  for (const auto& s : stmts) {
    CollectLiterals(s.index, out);
    CollectLiterals(s.value, out);
    CollectLiterals(s.guard, out);
    CollectStmtLiterals(s.then_body, out);
    CollectStmtLiterals(s.else_body, out);
  }
}

// Existentials become their witness instance `lo <= w && w < hi && body[w]`.
Expr Witness(const Expr& e, const std::string& w) {
  if (e->kind() == Kind::kExists) {
    Expr wv = Var(w);
    return And({Le(e->arg(0), wv), Lt(wv, e->arg(1)),
                Substitute(e->arg(2), e->name(), wv)});
  }
  if (e->args().empty() || e->kind() == Kind::kForall) return e;
  std::vector<Expr> args;
  for (const auto& a : e->args()) args.push_back(Witness(a, w));
  return WithArgs(e, std::move(args));
}

int CountAssignments(const std::vector<Stmt>& stmts, const std::string& x) {
  int n = 0;
  for (const auto& s : stmts) {
    if ((s.kind == Stmt::Kind::kAssign || s.kind == Stmt::Kind::kGhostSet) &&
        s.target == x) {
      ++n;
    }
    n += CountAssignments(s.then_body, x) + CountAssignments(s.else_body, x);
  }
  return n;
}

// +1 / -1 when `s` is `x = x + 1` / `x = x - 1`, else 0.
int StepOf(const Stmt& s) {
  if (s.kind != Stmt::Kind::kAssign || s.declares) return 0;
  const Expr& v = s.value;
  if ((v->kind() != Kind::kAdd && v->kind() != Kind::kSub) ||
      v->arg(0)->kind() != Kind::kVar || v->arg(0)->name() != s.target ||
      !v->arg(1)->is_int_lit() || v->arg(1)->value() != 1) {
    return 0;
  }
  return v->kind() == Kind::kAdd ? 1 : -1;
}

Kind Flip(Kind k) {
  switch (k) {
    case Kind::kLt:
      return Kind::kGt;
    case Kind::kLe:
      return Kind::kGe;
    case Kind::kGt:
      return Kind::kLt;
    case Kind::kGe:
      return Kind::kLe;
    default:
      return k;
  }
}

struct GuardBound {
  std::string var;
  Kind op;
  Expr bound;
};

bool Mentions(const Expr& e, const std::set<std::string>& names) {
  for (const auto& n : FreeVars(e)) {
    if (names.count(n)) return true;
  }
  return false;
}

void SetBit(std::vector<uint64_t>& bits, size_t i) {
  if (bits.size() <= i / 64) bits.resize(i / 64 + 1, 0);
  bits[i / 64] |= uint64_t{1} << (i % 64);
}

}  // namespace

Learner::Learner(const GenerationContext& ctx)
    : ctx_(ctx), sp_(*ctx.program) {
  Analyse();
  BuildAtoms();
}

void Learner::Analyse() {
  const Segment& seg = sp_.Loop(ctx_.loop_index);
  loop_ = seg.loop();
  loop_id_ = loop_.loop_id;
  pre_segment_ = sp_.LoopFree(ctx_.loop_index).stmts;
  guard_ = loop_.guard;
  post_ = Simplify(ctx_.loop_post ? ctx_.loop_post : True());
  scope_ = ScopeAtLoop(sp_.program, loop_id_);

  for (const auto& v : ModifiedVars(loop_.then_body)) {
    if (scope_.count(v)) modified_.insert(v);
  }
  for (const auto& s : loop_.then_body) {
    int step = StepOf(s);
    if (step != 0 && scope_.count(s.target) &&
        CountAssignments(loop_.then_body, s.target) == 1) {
      counters_.push_back(s.target);
    }
  }
  for (const auto& s : pre_segment_) {
    if (s.kind != Stmt::Kind::kAssign || !modified_.count(s.target)) continue;
    if (!Mentions(s.value, modified_) && !ContainsKind(s.value, Kind::kSelect)) {
      init_values_[s.target] = s.value;
    } else {
      init_values_.erase(s.target);
    }
  }

  constants_ = {0, 1};
  CollectLiterals(post_, constants_);
  CollectStmtLiterals(sp_.Flatten(), constants_);
  for (auto it = constants_.begin(); it != constants_.end();) {
    it = std::llabs(*it) > 64 ? constants_.erase(it) : std::next(it);
  }

  std::set<std::string> taken;
  for (const auto& [n, s] : sp_.program.Scope()) taken.insert(n);
  for (const auto& n : AllNames(post_)) taken.insert(n);
  for (const auto& n : AllNames(sp_.program.pre)) taken.insert(n);
  bound_var_ = FreshName("k", taken);
  taken.insert(bound_var_);

  if (ContainsKind(post_, Kind::kExists)) {
    for (const auto& x : counters_) {
      int step = 0;
      for (const auto& s : loop_.then_body) {
        if (s.target == x && StepOf(s) != 0) step = StepOf(s);
      }
      for (Expr value : {step > 0 ? Sub(Var(x), IntLit(1))
                                  : Add(Var(x), IntLit(1)),
                         Var(x)}) {
        std::string name = FreshName("w", taken);
        taken.insert(name);
        ghosts_.push_back({name, value});
      }
    }
  }

  CandidateInvariant carrier;
  carrier.loop_id = loop_id_;
  GhostAugmentation aug;
  for (const auto& g : ghosts_) {
    aug.decls.push_back(Stmt::GhostDecl(g.name, g.value));
    aug.sets.push_back(Stmt::GhostSet(g.name, g.value));
  }
  body_ = loop_.then_body;
  body_.insert(body_.end(), aug.sets.begin(), aug.sets.end());
  carrier.ghost = aug;
  augmented_ = ghosts_.empty()
                   ? sp_.program
                   : Augment(sp_.program, {{loop_id_, carrier}});
}

void Learner::AddAtom(Formula f, int tier) {
  try {
    f = Simplify(f);
  } catch (const Error&) {
    return;
  }
  if (f->is_bool_lit() || f->sort() != Sort::kBool) return;
  Atom atom;
  for (const auto& [name, sort] : FreeVarsSorted(f)) {
    auto it = scope_.find(name);
    if (it != scope_.end()) {
      if (it->second != sort) return;
      continue;
    }
    auto g = std::find_if(ghosts_.begin(), ghosts_.end(),
                          [&](const GhostPlan& p) { return p.name == name; });
    if (g == ghosts_.end() || sort != Sort::kInt) return;
    atom.ghosts.push_back(static_cast<int>(g - ghosts_.begin()));
  }
  atom.text = ToString(f);
  if (!atom_texts_.insert(atom.text).second) return;
  try {
    atom.wp = WpStmts(body_, f);
  } catch (const Error&) {
    return;
  }
  atom.formula = std::move(f);
  atom.tier = tier;
  atoms_.push_back(std::move(atom));
}

void Learner::BuildAtoms() {
  std::vector<Formula> post_conjuncts = Conjuncts(post_);
  std::vector<std::string> scalars, arrays;
  for (const auto& [name, sort] : scope_) {
    (sort == Sort::kArray ? arrays : scalars).push_back(name);
  }
  std::vector<Expr> unmodified;
  for (const auto& v : scalars) {
    if (!modified_.count(v)) unmodified.push_back(Var(v));
  }
  std::vector<Expr> lengths;
  for (const auto& a : arrays) lengths.push_back(Length(Var(a, Sort::kArray)));

  // Loop postcondition.
  for (const auto& q : post_conjuncts) AddAtom(q, 0);

  // Guard-derived bounds and postcondition generalisations.
  std::vector<GuardBound> bounds;
  for (const auto& c : Conjuncts(guard_)) {
    if (!c->is_comparison() || c->kind() == Kind::kEq) continue;
    const Expr& l = c->arg(0);
    const Expr& r = c->arg(1);
    if (l->kind() == Kind::kVar && modified_.count(l->name()) &&
        !Mentions(r, modified_)) {
      bounds.push_back({l->name(), c->kind(), r});
    } else if (r->kind() == Kind::kVar && modified_.count(r->name()) &&
               !Mentions(l, modified_)) {
      bounds.push_back({r->name(), Flip(c->kind()), l});
    }
  }
  std::vector<Formula> generalised;
  for (const auto& b : bounds) {
    Expr x = Var(b.var);
    std::vector<Expr> images = {x};
    if (b.op == Kind::kLe) images.push_back(Sub(x, IntLit(1)));
    if (b.op == Kind::kGe) images.push_back(Add(x, IntLit(1)));
    for (const auto& q : post_conjuncts) {
      for (const auto& image : images) {
        Formula g = b.bound->is_int_lit() ? ReplaceInBounds(q, b.bound, image)
                                          : Replace(q, b.bound, image);
        if (!Equal(g, q)) generalised.push_back(g);
      }
    }
  }
  for (const auto& g : generalised) AddAtom(g, 2);
  for (size_t i = 0; i < ghosts_.size(); ++i) {
    for (const auto& f : post_conjuncts) {
      if (ContainsKind(f, Kind::kExists)) AddAtom(Witness(f, ghosts_[i].name), 1);
    }
    for (const auto& f : generalised) {
      if (ContainsKind(f, Kind::kExists)) AddAtom(Witness(f, ghosts_[i].name), 1);
    }
  }

  // Relaxed guards: what still holds after the last iteration.
  for (const auto& b : bounds) {
    Expr x = Var(b.var);
    switch (b.op) {
      case Kind::kLt:
        AddAtom(Le(x, b.bound), 3);
        break;
      case Kind::kLe:
        AddAtom(Le(x, Add(b.bound, IntLit(1))), 3);
        break;
      case Kind::kGt:
        AddAtom(Le(b.bound, x), 3);
        break;
      case Kind::kGe:
        AddAtom(Le(Sub(b.bound, IntLit(1)), x), 3);
        break;
      case Kind::kNe:
        AddAtom(Le(x, b.bound), 3);
        AddAtom(Le(b.bound, x), 3);
        break;
      default:
        break;
    }
  }

  // Precondition facts over symbols the loop leaves alone.
  for (const auto& c : Conjuncts(Simplify(sp_.program.pre))) {
    if (Mentions(c, modified_)) {
      // Lengths of written arrays never change; element reads do.
      bool reads_modified = false;
      std::function<void(const Expr&)> walk = [&](const Expr& e) {
        if (e->kind() == Kind::kSelect && e->arg(0)->kind() == Kind::kVar &&
            modified_.count(e->arg(0)->name())) {
          reads_modified = true;
        }
        if (e->kind() == Kind::kVar && e->sort() == Sort::kInt &&
            modified_.count(e->name())) {
          reads_modified = true;
        }
        if (e->kind() == Kind::kLength) return;
        for (const auto& a : e->args()) walk(a);
      };
      walk(c);
      if (reads_modified) continue;
    }
    AddAtom(c, 4);
  }

  // Frame facts: relations among scalars the loop leaves alone.
  for (size_t i = 0; i < unmodified.size(); ++i) {
    AddAtom(Le(IntLit(0), unmodified[i]), 4);
    for (size_t j = 0; j < unmodified.size(); ++j) {
      if (i == j) continue;
      if (i < j) AddAtom(Eq(unmodified[i], unmodified[j]), 4);
      AddAtom(Le(unmodified[i], unmodified[j]), 4);
      AddAtom(Eq(unmodified[i], Mul(IntLit(2), unmodified[j])), 4);
    }
  }

  // Interval bounds of modified scalars.
  for (const auto& x : scalars) {
    if (!modified_.count(x)) continue;
    Expr xv = Var(x);
    std::vector<Expr> terms = {IntLit(0), IntLit(1)};
    terms.insert(terms.end(), unmodified.begin(), unmodified.end());
    terms.insert(terms.end(), lengths.begin(), lengths.end());
    if (init_values_.count(x)) terms.push_back(init_values_.at(x));
    for (const auto& b : bounds) terms.push_back(b.bound);
    for (const auto& t : terms) {
      AddAtom(Le(t, xv), 5);
      AddAtom(Le(xv, t), 5);
    }
  }

  // Relations between pairs of scalars.
  for (const auto& x : scalars) {
    if (!modified_.count(x)) continue;
    Expr xv = Var(x);
    for (const auto& y : scalars) {
      if (y == x) continue;
      Expr yv = Var(y);
      AddAtom(Eq(xv, yv), 6);
      AddAtom(Le(xv, yv), 6);
      AddAtom(Le(yv, xv), 6);
      AddAtom(Eq(xv, Mul(IntLit(2), yv)), 6);
      if (modified_.count(y)) {
        for (const auto& t : unmodified) {
          AddAtom(Eq(Add(xv, yv), t), 6);
          AddAtom(Eq(Sub(xv, yv), t), 6);
        }
        AddAtom(Eq(Add(xv, yv), IntLit(0)), 6);
      }
    }
  }

  // Quantified facts over array ranges.
  Expr k = Var(bound_var_);
  std::vector<Expr> quantifiers;
  CollectQuantifiers(post_, quantifiers);
  std::vector<Formula> bodies;
  std::vector<std::pair<Expr, Expr>> ranges;
  for (const auto& q : quantifiers) {
    Formula body = Substitute(q->arg(2), q->name(), k);
    bodies.push_back(body);
    for (const auto& [name, sort] : FreeVarsSorted(body)) {
      if (sort != Sort::kArray) continue;
      for (const auto& other : arrays) {
        if (other != name) {
          bodies.push_back(
              Substitute(body, name, Var(other, Sort::kArray)));
        }
      }
    }
    ranges.emplace_back(q->arg(0), q->arg(1));
    for (const auto& x : counters_) {
      ranges.emplace_back(q->arg(0), Var(x));
      ranges.emplace_back(Var(x), q->arg(1));
    }
  }
  std::set<std::string> written;
  for (const auto& s : loop_.then_body) {
    if (s.kind != Stmt::Kind::kStore) continue;
    written.insert(s.target);
    if (s.index->kind() != Kind::kVar) continue;
    const std::string& x = s.index->name();
    if (std::find(counters_.begin(), counters_.end(), x) == counters_.end()) {
      continue;
    }
    std::set<std::string> others = modified_;
    others.erase(x);
    if (Mentions(s.value, others)) continue;
    bodies.push_back(Eq(Select(Var(s.target, Sort::kArray), k),
                        Substitute(s.value, x, k)));
  }
  for (const auto& a : arrays) {
    if (written.count(a)) continue;
    for (int64_t c : constants_) {
      bodies.push_back(Eq(Select(Var(a, Sort::kArray), k), IntLit(c)));
    }
  }
  for (const auto& x : counters_) ranges.emplace_back(IntLit(0), Var(x));
  for (const auto& t : unmodified) ranges.emplace_back(IntLit(0), t);
  for (const auto& b : bodies) {
    for (const auto& [lo, hi] : ranges) {
      try {
        AddAtom(Forall(bound_var_, lo, hi, b), 7);
      } catch (const Error&) {
      }
    }
  }

  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const Atom& a, const Atom& b) {
                     if (a.tier != b.tier) return a.tier < b.tier;
                     return a.text < b.text;
                   });
}

bool Learner::Holds(const Formula& f, const State& s) const {
  try {
    return EvalFormula(f, s);
  } catch (const Error&) {
    return false;
  }
}

State Learner::Complete(const State& s) {
  State out;
  out.nondet_seed = s.nondet_seed;
  auto fill = [&](const std::string& name, Sort sort) {
    auto it = s.vars.find(name);
    bool ok = it != s.vars.end() &&
              (sort == Sort::kArray) ==
                  std::holds_alternative<ArrayValue>(it->second);
    if (ok) {
      out.vars[name] = it->second;
    } else if (sort == Sort::kArray) {
      out.vars[name] = ArrayValue{};
    } else {
      out.vars[name] = int64_t{0};
    }
  };
  for (const auto& [name, sort] : scope_) fill(name, sort);
  for (const auto& g : ghosts_) fill(g.name, Sort::kInt);
  return out;
}

State Learner::RandomState(bool wide) {
  State s;
  int lim = wide ? 8 : 6;
  std::uniform_int_distribution<int64_t> scalar(-lim, lim);
  std::uniform_int_distribution<int> len(0, wide ? 6 : 5);
  std::uniform_int_distribution<int64_t> elem(-4, 4);
  auto make = [&](const std::string& name, Sort sort) {
    if (sort == Sort::kArray) {
      std::vector<int64_t> elems(static_cast<size_t>(len(rng_)));
      for (auto& e : elems) e = elem(rng_);
      s.SetArray(name, std::move(elems));
    } else {
      s.SetInt(name, scalar(rng_));
    }
  };
  if (wide) {
    for (const auto& p : sp_.program.params) make(p.name, p.sort);
  } else {
    for (const auto& [name, sort] : scope_) make(name, sort);
    for (const auto& g : ghosts_) make(g.name, Sort::kInt);
  }
  s.nondet_seed = rng_();
  return s;
}

void Learner::Sample() {
  rng_.seed(ctx_.seed * 0x9E3779B97F4A7C15ULL + static_cast<uint64_t>(loop_id_));
  std::vector<State> heads;
  InterpretOptions opts;
  opts.fuel = kRunFuel;
  opts.on_loop_head = [&](int id, const State& s) {
    if (id == loop_id_ && heads.size() < 4 * kMaxPositives) heads.push_back(s);
  };
  int accepted = 0;
  for (int t = 0; t < kInputTries && accepted < kPositiveRuns; ++t) {
    State s0 = RandomState(true);
    if (!Holds(sp_.program.pre, s0)) continue;
    ++accepted;
    try {
      Interpret(augmented_, s0, opts);
    } catch (const Error&) {
    }
  }
  for (const auto& h : heads) {
    State c = Complete(h);
    if (seen_.insert(c.ToString()).second) positives_.push_back(c);
  }
  if (positives_.size() > kMaxPositives) {
    std::vector<State> kept;
    size_t n = positives_.size();
    for (size_t i = 0; i < kMaxPositives; ++i) {
      kept.push_back(positives_[i * n / kMaxPositives]);
    }
    positives_ = std::move(kept);
  }
  // Loop entries reached from initialisation counterexamples.
  heads.clear();
  for (const auto& f : ctx_.failures) {
    if (f.diagnostic.obligation != Obligation::kInitialisation ||
        !f.diagnostic.model) {
      continue;
    }
    std::vector<Stmt> run = pre_segment_;
    for (const auto& g : ghosts_) run.push_back(Stmt::GhostDecl(g.name, g.value));
    Stmt loop = loop_;
    loop.then_body = body_;
    run.push_back(loop);
    State s0 = *f.diagnostic.model;
    for (const auto& p : sp_.program.params) {
      if (!s0.Has(p.name)) {
        if (p.sort == Sort::kArray) {
          s0.SetArray(p.name, {});
        } else {
          s0.SetInt(p.name, 0);
        }
      }
    }
    try {
      ExecStmts(run, s0, opts);
    } catch (const Error&) {
    }
  }
  for (const auto& h : heads) {
    State c = Complete(h);
    if (seen_.insert(c.ToString()).second) positives_.push_back(c);
  }

  for (int i = 0; i < kRandomStates; ++i) samples_.push_back(RandomState(false));
  if (!positives_.empty()) {
    size_t n = positives_.size();
    size_t sources = std::min<size_t>(n, kMutantSources);
    std::vector<std::string> names;
    for (const auto& [name, sort] : positives_.front().vars) names.push_back(name);
    std::uniform_int_distribution<size_t> pick(0, names.size() - 1);
    std::uniform_int_distribution<int> delta(-2, 2);
    std::uniform_int_distribution<int64_t> value(-6, 6);
    for (size_t i = 0; i < sources; ++i) {
      for (int m = 0; m < kMutantsPerSource; ++m) {
        State s = positives_[i * n / sources];
        Value& v = s.vars[names[pick(rng_)]];
        if (auto* iv = std::get_if<int64_t>(&v)) {
          int d = delta(rng_);
          *iv = d == 0 ? value(rng_) : *iv + d;
        } else {
          auto& arr = std::get<ArrayValue>(v);
          if (!arr.elems.empty() && m % 3 == 2) {
            arr.elems.pop_back();
          } else if (arr.elems.empty()) {
            arr.elems.push_back(value(rng_));
          } else {
            std::uniform_int_distribution<size_t> at(0, arr.elems.size() - 1);
            arr.elems[at(rng_)] = value(rng_);
          }
        }
        samples_.push_back(std::move(s));
      }
    }
  }
  for (const auto& f : ctx_.failures) {
    if (f.diagnostic.obligation == Obligation::kInitialisation ||
        !f.diagnostic.model) {
      continue;
    }
    samples_.push_back(Complete(*f.diagnostic.model));
  }
}

void Learner::Classify(const State& s, bool positive) {
  const size_t n = atoms_.size();
  if (positive) {
    for (size_t a = 0; a < n; ++a) {
      if (alive_[a] && !Holds(atoms_[a].formula, s)) alive_[a] = false;
    }
  }
  bool guard;
  try {
    guard = EvalFormula(guard_, s);
  } catch (const Error&) {
    return;
  }
  if (guard) {
    size_t idx = n_imp_++;
    for (size_t a = 0; a < n; ++a) {
      if (!alive_[a]) continue;
      if (Holds(atoms_[a].formula, s)) SetBit(imp_val_[a], idx);
      if (Holds(atoms_[a].wp, s)) SetBit(imp_wp_[a], idx);
    }
    return;
  }
  if (Holds(post_, s)) return;
  size_t idx = n_neg_++;
  for (size_t a = 0; a < n; ++a) {
    if (alive_[a] && Holds(atoms_[a].formula, s)) SetBit(neg_val_[a], idx);
  }
}

CandidateInvariant Learner::MakeCandidate(const std::vector<int>& chosen) const {
  CandidateInvariant c;
  c.loop_id = loop_id_;
  c.provenance = Provenance::kTemplate;
  std::set<int> ghosts;
  for (int i : chosen) {
    c.conjuncts.push_back(atoms_[static_cast<size_t>(i)].formula);
    for (int g : atoms_[static_cast<size_t>(i)].ghosts) ghosts.insert(g);
  }
  if (!ghosts.empty()) {
    GhostAugmentation aug;
    for (int g : ghosts) {
      const GhostPlan& plan = ghosts_[static_cast<size_t>(g)];
      aug.decls.push_back(Stmt::GhostDecl(plan.name, plan.value));
      aug.sets.push_back(Stmt::GhostSet(plan.name, plan.value));
    }
    c.ghost = std::move(aug);
  }
  return c;
}

std::vector<CandidateInvariant> Learner::Learn(
    const std::vector<std::vector<std::string>>& blocked, int max_candidates,
    int64_t max_checks, bool core_first) {
  const size_t n = atoms_.size();
  alive_.assign(n, true);
  imp_val_.assign(n, {});
  imp_wp_.assign(n, {});
  neg_val_.assign(n, {});
  Sample();
  for (const auto& p : positives_) Classify(p, true);
  for (const auto& s : samples_) Classify(s, false);

  const size_t wi = (n_imp_ + 63) / 64;
  const size_t wn = (n_neg_ + 63) / 64;
  auto full = [](std::vector<uint64_t>& v, size_t words) { v.resize(words, 0); };
  for (size_t a = 0; a < n; ++a) {
    full(imp_val_[a], wi);
    full(imp_wp_[a], wi);
    full(neg_val_[a], wn);
  }

  std::vector<int> h;
  for (size_t a = 0; a < n; ++a) {
    if (alive_[a]) h.push_back(static_cast<int>(a));
  }
  // Houdini: drop atoms not preserved where the whole set holds.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<uint64_t> mask(wi, ~uint64_t{0});
    for (int a : h) {
      for (size_t w = 0; w < wi; ++w) mask[w] &= imp_val_[a][w];
    }
    std::vector<int> keep;
    for (int a : h) {
      bool ok = true;
      for (size_t w = 0; w < wi && ok; ++w) {
        ok = (mask[w] & ~imp_wp_[a][w]) == 0;
      }
      if (ok) {
        keep.push_back(a);
      } else {
        changed = true;
      }
    }
    h = std::move(keep);
  }
  auto texts_of = [&](const std::vector<int>& chosen) {
    std::vector<std::string> t;
    for (int i : chosen) t.push_back(atoms_[static_cast<size_t>(i)].text);
    std::sort(t.begin(), t.end());
    return t;
  };
  auto is_blocked = [&](const std::vector<int>& chosen) {
    auto t = texts_of(chosen);
    return std::find(blocked.begin(), blocked.end(), t) != blocked.end();
  };
  auto consistent = [&](const std::vector<int>& chosen) {
    std::vector<uint64_t> val(wi, ~uint64_t{0}), wp(wi, ~uint64_t{0}),
        neg(wn, ~uint64_t{0});
    for (int a : chosen) {
      for (size_t w = 0; w < wi; ++w) {
        val[w] &= imp_val_[a][w];
        wp[w] &= imp_wp_[a][w];
      }
      for (size_t w = 0; w < wn; ++w) neg[w] &= neg_val_[a][w];
    }
    for (size_t w = 0; w < wi; ++w) {
      if (val[w] & ~wp[w]) return false;
    }
    for (size_t w = 0; w < wn; ++w) {
      if (neg[w]) return false;
    }
    return true;
  };

  std::vector<CandidateInvariant> out;
  if (h.empty()) return out;
  if (!consistent(h)) {
    // No conjunction of the pool excludes every negative example.
    if (!is_blocked(h)) out.push_back(MakeCandidate(h));
    return out;
  }

  if (core_first && !is_blocked(h)) out.push_back(MakeCandidate(h));

  int64_t checks = 0;
  std::vector<int> chosen;
  std::vector<std::vector<uint64_t>> val_stack, wp_stack, neg_stack;
  std::function<bool(size_t, size_t)> search = [&](size_t start,
                                                   size_t remaining) -> bool {
    if (remaining == 0) {
      ++checks;
      const auto& val = val_stack.back();
      const auto& wp = wp_stack.back();
      const auto& neg = neg_stack.back();
      for (size_t w = 0; w < wi; ++w) {
        if (val[w] & ~wp[w]) return checks >= max_checks;
      }
      for (size_t w = 0; w < wn; ++w) {
        if (neg[w]) return checks >= max_checks;
      }
      if (!is_blocked(chosen)) {
        out.push_back(MakeCandidate(chosen));
        if (static_cast<int>(out.size()) >= max_candidates) return true;
      }
      return checks >= max_checks;
    }
    for (size_t i = start; i + remaining <= h.size(); ++i) {
      int a = h[i];
      auto val = val_stack.back();
      auto wp = wp_stack.back();
      auto neg = neg_stack.back();
      for (size_t w = 0; w < wi; ++w) {
        val[w] &= imp_val_[a][w];
        wp[w] &= imp_wp_[a][w];
      }
      for (size_t w = 0; w < wn; ++w) neg[w] &= neg_val_[a][w];
      chosen.push_back(a);
      val_stack.push_back(std::move(val));
      wp_stack.push_back(std::move(wp));
      neg_stack.push_back(std::move(neg));
      bool stop = search(i + 1, remaining - 1);
      chosen.pop_back();
      val_stack.pop_back();
      wp_stack.pop_back();
      neg_stack.pop_back();
      if (stop) return true;
    }
    return false;
  };
  val_stack.push_back(std::vector<uint64_t>(wi, ~uint64_t{0}));
  wp_stack.push_back(std::vector<uint64_t>(wi, ~uint64_t{0}));
  neg_stack.push_back(std::vector<uint64_t>(wn, ~uint64_t{0}));
  for (size_t size = 1; size <= h.size(); ++size) {
    if (search(0, size)) break;
  }
  if (out.empty()) {
    // Budget exhausted: shrink the full set greedily instead.
    std::vector<int> cur = h;
    for (size_t i = cur.size(); i-- > 0;) {
      std::vector<int> trial = cur;
      trial.erase(trial.begin() + static_cast<long>(i));
      if (!trial.empty() && consistent(trial)) cur = std::move(trial);
    }
    if (!is_blocked(cur)) out.push_back(MakeCandidate(cur));
  }
  return out;
}

}  // namespace invgen::internal
