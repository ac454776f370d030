#include "rankineq/lp_bounds.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "rankineq/errors.hpp"

namespace rankineq {

namespace {

void require_ground(std::size_t n) {
  if (n > max_lp_ground_size)
    throw CapExceeded("ground set of " + std::to_string(n) + " exceeds the LP limit of " +
                      std::to_string(max_lp_ground_size));
}

std::string join_mask(const std::vector<std::string>& ground, std::size_t mask) {
  std::string out;
  for (std::size_t i = 0; i < ground.size(); ++i)
    if (mask >> i & 1) {
      if (!out.empty()) out += ',';
      out += ground[i];
    }
  return out;
}

// Sparse affine expression sum(coeff * x) + constant.
struct Expr {
  std::map<std::size_t, Rational> coeffs;
  Rational constant;

  void add(std::size_t var, const Rational& c) {
    if (sgn(c) == 0) return;
    auto& slot = coeffs[var];
    slot += c;
    if (sgn(slot) == 0) coeffs.erase(var);
  }
  void add_scaled(const Expr& e, const Rational& f) {
    for (const auto& [v, c] : e.coeffs) add(v, f * c);
    constant += f * e.constant;
  }
};

Expr substitute(const LinearConstraint& con, const std::map<std::size_t, Expr>& subs) {
  Expr e;
  for (const auto& [v, c] : con.coeffs) {
    auto it = subs.find(v);
    if (it == subs.end()) {
      e.add(v, c);
    } else {
      e.add_scaled(it->second, c);
    }
  }
  return e;
}

Rational evaluate(const LinearConstraint& con, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (const auto& [v, c] : con.coeffs) lhs += c * x[v];
  return lhs;
}

}  // namespace

std::string LpProblem::variable_name(std::size_t index) const {
  if (index == 0) return "v";
  return "f(" + join_mask(ground, index) + ")";
}

std::vector<LinearConstraint> elemental_shannon(const std::vector<std::string>& ground) {
  const std::size_t n = ground.size();
  require_ground(n);
  std::vector<LinearConstraint> out;
  const std::size_t full = (std::size_t{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint c;
    c.coeffs.emplace_back(full, 1);
    const std::size_t rest = full & ~(std::size_t{1} << i);
    if (rest) c.coeffs.emplace_back(rest, -1);
    c.provenance = "shannon H(" + ground[i] + "|rest) >= 0";
    out.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t bi = std::size_t{1} << i, bj = std::size_t{1} << j;
      const std::size_t others = full & ~(bi | bj);
      // Enumerate every submask of `others`, including the empty one.
      for (std::size_t x = others;; x = (x - 1) & others) {
        LinearConstraint c;
        c.coeffs.emplace_back(x | bi, 1);
        c.coeffs.emplace_back(x | bj, 1);
        c.coeffs.emplace_back(x | bi | bj, -1);
        if (x) c.coeffs.emplace_back(x, -1);
        c.provenance = "shannon I(" + ground[i] + ";" + ground[j] + "|" + join_mask(ground, x) + ") >= 0";
        out.push_back(std::move(c));
        if (x == 0) break;
      }
    }
  return out;
}

std::vector<LinearConstraint> elemental_shannon(std::size_t n) {
  std::vector<std::string> ground;
  for (std::size_t i = 0; i < n; ++i) ground.push_back("q" + std::to_string(i + 1));
  return elemental_shannon(ground);
}

std::vector<std::string> lp_ground(const AccessStructure& s) {
  auto g = s.participants();
  g.push_back(s.dealer());
  return g;
}

std::vector<LinearConstraint> port_lp_constraints(const AccessStructure& s) {
  const std::size_t n = s.participants().size();
  require_ground(n + 1);
  const auto ground = lp_ground(s);
  const std::size_t dealer = std::size_t{1} << n;
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint c;
    c.coeffs = {{0, Rational(1)}, {std::size_t{1} << i, Rational(-1)}};
    c.provenance = "share v >= f(" + ground[i] + ")";
    out.push_back(std::move(c));
  }
  for (std::size_t x = 0; x < dealer; ++x) {
    const bool q = s.is_qualified(static_cast<SubsetMask>(x));
    LinearConstraint c;
    c.relation = Relation::eq;
    c.coeffs.emplace_back(x | dealer, 1);
    if (x) c.coeffs.emplace_back(x, -1);
    c.rhs = q ? 0 : 1;
    c.provenance = std::string(q ? "qualified" : "unqualified") + " {" + join_mask(ground, x) + "}";
    out.push_back(std::move(c));
  }
  return out;
}

LinearConstraint instantiate_rank_inequality(const EntropyInequality& ineq, const RoleMap& role_map,
                                             const std::vector<std::string>& ground) {
  require_ground(ground.size());
  auto index_of = [&](const std::string& name) {
    auto it = std::find(ground.begin(), ground.end(), name);
    if (it == ground.end()) throw UnknownParticipant("role map image '" + name + "' is not in the ground set");
    return static_cast<std::size_t>(it - ground.begin());
  };
  std::map<std::size_t, Rational> acc;
  for (const auto& term : ineq.terms) {
    std::size_t mask = 0;
    for (const auto& v : term.vars) {
      auto it = role_map.find(v);
      if (it == role_map.end()) throw UnmappedVariable("role map has no image for " + v.name());
      mask |= std::size_t{1} << index_of(it->second);
    }
    acc[mask] += term.coeff;
  }
  LinearConstraint c;
  for (auto& [mask, coeff] : acc)
    if (sgn(coeff) != 0) c.coeffs.emplace_back(mask, coeff);
  std::string map_text;
  for (const auto& [label, image] : role_map) {
    if (!map_text.empty()) map_text += ',';
    map_text += label.name() + "->" + image;
  }
  c.provenance = ineq.provenance + " [" + map_text + "]";
  return c;
}

RoleMap natural_role_map(const EntropyInequality& ineq, const AccessStructure& s) {
  RoleMap m;
  for (const auto& v : ineq.variables()) {
    std::string image;
    switch (v.kind) {
      case VariableLabel::Kind::a_row: image = "a" + std::to_string(v.index); break;
      case VariableLabel::Kind::b_column: image = "b" + std::to_string(v.index); break;
      case VariableLabel::Kind::dealer: image = s.dealer(); break;
    }
    if (v.kind != VariableLabel::Kind::dealer) s.index_of(image);
    m[v] = image;
  }
  return m;
}

std::vector<RoleMap> injective_role_maps(const EntropyInequality& ineq, const std::vector<std::string>& ground,
                                         std::size_t limit) {
  const auto vars = ineq.variables();
  const std::size_t k = vars.size(), n = ground.size();
  if (k > n) return {};
  std::size_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count *= n - i;
    if (count > limit) throw CapExceeded("more than " + std::to_string(limit) + " injective role maps");
  }
  std::vector<RoleMap> out;
  out.reserve(count);
  std::vector<char> used(n, 0);
  RoleMap current;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == k) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      current[vars[depth]] = ground[i];
      rec(depth + 1);
      used[i] = 0;
    }
  };
  rec(0);
  return out;
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

std::optional<std::string> first_violated_constraint(const LpProblem& problem, const std::vector<Rational>& x) {
  for (const auto& con : problem.constraints) {
    auto lhs = evaluate(con, x);
    const bool ok = con.relation == Relation::eq ? lhs == con.rhs : lhs >= con.rhs;
    if (!ok) return con.provenance;
  }
  return std::nullopt;
}

LpReport solve_exact_lp(const LpProblem& problem, const SimplexOptions& options) {
  require_ground(problem.ground.size());
  const std::size_t nvars = problem.variable_count();
  for (const auto& con : problem.constraints)
    for (const auto& [v, c] : con.coeffs)
      if (v >= nvars) throw InvalidArgument("constraint '" + con.provenance + "' uses an undeclared variable");

  LpReport rep;
  rep.kind = problem.kind;
  rep.char_condition = problem.char_condition;

  // Equalities: solve each for its highest-index variable and substitute.
  std::map<std::size_t, Expr> subs;
  for (const auto& con : problem.constraints) {
    if (con.relation != Relation::eq) continue;
    Expr e = substitute(con, subs);
    e.constant -= con.rhs;
    if (e.coeffs.empty()) {
      if (sgn(e.constant) != 0) return rep;  // inconsistent equalities
      continue;
    }
    auto pivot = std::prev(e.coeffs.end());
    if (pivot->first == 0 && e.coeffs.size() > 1) pivot = std::prev(pivot);
    const std::size_t z = pivot->first;
    const Rational a = pivot->second;
    Expr def;
    for (const auto& [v, c] : e.coeffs)
      if (v != z) def.coeffs[v] = -c / a;
    def.constant = -e.constant / a;
    for (auto& [w, expr] : subs) {
      auto it = expr.coeffs.find(z);
      if (it == expr.coeffs.end()) continue;
      Rational f = it->second;
      expr.coeffs.erase(it);
      expr.add_scaled(def, f);
    }
    subs.emplace(z, std::move(def));
  }

  Expr objective;
  if (auto it = subs.find(0); it != subs.end()) {
    objective = it->second;
  } else {
    objective.add(0, 1);
  }

  // Inequalities over the surviving variables, deduplicated by left side.
  struct Row {
    Rational rhs;
    std::size_t source;
  };
  std::map<std::vector<std::pair<std::size_t, Rational>>, Row> rows;
  for (std::size_t k = 0; k < problem.constraints.size(); ++k) {
    const auto& con = problem.constraints[k];
    if (con.relation != Relation::ge) continue;
    Expr e = substitute(con, subs);
    Rational rhs = con.rhs - e.constant;
    if (e.coeffs.empty()) {
      if (sgn(rhs) > 0) return rep;  // 0 >= positive
      continue;
    }
    std::vector<std::pair<std::size_t, Rational>> key(e.coeffs.begin(), e.coeffs.end());
    auto [it, inserted] = rows.try_emplace(std::move(key), Row{rhs, k});
    if (!inserted && rhs > it->second.rhs) it->second = Row{rhs, k};
  }

  std::map<std::size_t, std::size_t> compact;
  auto index = [&compact](std::size_t v) { return compact.emplace(v, compact.size()).first->second; };
  for (const auto& [v, c] : objective.coeffs) index(v);
  for (const auto& [key, row] : rows)
    for (const auto& [v, c] : key) index(v);

  // Dual of  min obj.x  s.t.  a_k.x >= b_k  with x free:
  //   min -b.y  s.t.  sum_k y_k a_k = obj,  y >= 0.
  StandardFormLp dual;
  dual.rows = compact.size();
  dual.rhs.assign(dual.rows, Rational(0));
  for (const auto& [v, c] : objective.coeffs) dual.rhs[compact.at(v)] = c;
  std::vector<std::size_t> sources;
  for (const auto& [key, row] : rows) {
    SparseColumn col;
    for (const auto& [v, c] : key) col.emplace_back(compact.at(v), c);
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    dual.columns.push_back(std::move(col));
    dual.cost.push_back(-row.rhs);
    sources.push_back(row.source);
  }
  rep.reduced_rows = dual.rows;
  rep.reduced_columns = dual.columns.size();

  auto res = solve_standard_form(dual, options);
  rep.pivots = res.pivots;
  if (res.status == SimplexStatus::pivot_limit) throw CapExceeded("simplex pivot limit reached");
  if (res.status == SimplexStatus::unbounded) {
    rep.status = LpStatus::infeasible;
    return rep;
  }
  if (res.status == SimplexStatus::infeasible) {
    // Primal is unbounded or infeasible; Farkas: it is infeasible iff
    // max b.y over {sum y_k a_k = 0, y >= 0} is unbounded.
    StandardFormLp farkas = dual;
    std::fill(farkas.rhs.begin(), farkas.rhs.end(), Rational(0));
    auto f = solve_standard_form(farkas, options);
    rep.pivots += f.pivots;
    rep.status = f.status == SimplexStatus::unbounded ? LpStatus::infeasible : LpStatus::unbounded;
    return rep;
  }

  std::vector<Rational> x(nvars, Rational(0));
  for (const auto& [v, i] : compact) x[v] = -res.multipliers[i];
  for (const auto& [z, def] : subs) {
    Rational value = def.constant;
    for (const auto& [v, c] : def.coeffs) value += c * x[v];
    x[z] = value;
  }

  if (auto bad = first_violated_constraint(problem, x))
    throw Error("primal re-substitution failed at constraint '" + *bad + "'");
  Rational dual_value = objective.constant;
  for (std::size_t k = 0; k < sources.size(); ++k) dual_value += -dual.cost[k] * res.x[k];
  if (dual_value != x[0]) throw Error("primal and dual objectives disagree");

  rep.status = LpStatus::optimal;
  rep.optimum = x[0];
  rep.primal = std::move(x);
  rep.resubstitution_passed = true;
  for (std::size_t k = 0; k < sources.size(); ++k)
    if (sgn(res.x[k]) > 0) rep.binding.push_back({problem.constraints[sources[k]].provenance, res.x[k]});
  return rep;
}

LpProblem build_kappa_problem(const AccessStructure& s, const std::vector<ExtraInequality>& extras) {
  LpProblem p;
  p.ground = lp_ground(s);
  require_ground(p.ground.size());
  p.constraints = port_lp_constraints(s);
  for (auto& c : elemental_shannon(p.ground)) p.constraints.push_back(std::move(c));
  std::vector<std::string> conditions;
  for (const auto& e : extras) {
    p.constraints.push_back(instantiate_rank_inequality(e.ineq, e.role_map, p.ground));
    auto cond = to_string(e.ineq.char_condition);
    if (e.ineq.char_condition != CharCondition::all) cond += " " + std::to_string(e.ineq.t);
    if (std::find(conditions.begin(), conditions.end(), cond) == conditions.end()) conditions.push_back(cond);
  }
  p.kind = extras.empty() ? "kappa" : "kappa_star";
  p.char_condition.clear();
  for (const auto& c : conditions) p.char_condition += (p.char_condition.empty() ? "" : ",") + c;
  if (p.char_condition.empty()) p.char_condition = "all";
  return p;
}

LpReport kappa_bound(const AccessStructure& s, const std::vector<ExtraInequality>& extras,
                     const SimplexOptions& options) {
  return solve_exact_lp(build_kappa_problem(s, extras), options);
}

}  // namespace rankineq
