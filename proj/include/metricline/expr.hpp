#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metricline/hyperdual.hpp"

namespace metricline {

// Thrown when evaluation leaves the mathematical domain (division by zero,
// log of a non-positive value, ...). Never returns a silent NaN instead.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

enum class NodeKind {
    Const, Var, Neg, Add, Sub, Mul, Div, Pow,
    Abs, Sqrt, Exp, Log, Min, Max, Sgn, Piecewise
};

enum class CmpOp { Lt, Le, Gt, Ge, Eq };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// One `cond -> value` arm of a pw(...) node; cond is `lhs op rhs`.
struct PiecewiseBranch {
    ExprPtr lhs;
    CmpOp op = CmpOp::Lt;
    ExprPtr rhs;
    ExprPtr value;
};

// Immutable expression tree over variables x, y. Shared subtrees are fine;
// evaluation never mutates.
struct Expr {
    NodeKind kind = NodeKind::Const;
    double constant = 0.0;                  // Const
    std::string name;                       // Var
    std::vector<ExprPtr> args;              // operator / function operands
    std::vector<PiecewiseBranch> branches;  // Piecewise arms, first match wins
    ExprPtr otherwise;                      // Piecewise mandatory else
};

// -- construction helpers ---------------------------------------------------

ExprPtr make_const(double v);
ExprPtr make_var(std::string name);
ExprPtr make_unary(NodeKind k, ExprPtr a);
ExprPtr make_binary(NodeKind k, ExprPtr a, ExprPtr b);
ExprPtr make_piecewise(std::vector<PiecewiseBranch> branches, ExprPtr otherwise);

// -- parsing / printing ------------------------------------------------------

// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := base ("^" factor)?
//   base   := number | ident | ident "(" expr ("," expr)* ")" | "(" expr ")" | "-" base
// pw(cond1, e1, ..., eElse) with cond := expr ("<"|"<="|">"|">="|"==") expr.
// Only the declared variable names are accepted as bare identifiers.
ExprPtr parse(std::string_view source, const std::vector<std::string>& vars);

// Canonical text form; parse(pretty_print(e)) is structurally equal to e.
std::string pretty_print(const Expr& e);
inline std::string pretty_print(const ExprPtr& e) { return pretty_print(*e); }

bool structurally_equal(const Expr& a, const Expr& b);

std::set<std::string> free_vars(const Expr& e);

// Replaces every occurrence of variable `a` with `b` and vice versa.
ExprPtr swap_vars(const ExprPtr& e, const std::string& a, const std::string& b);

// Substitutes `replacement` for every occurrence of variable `name`.
ExprPtr substitute(const ExprPtr& e, const std::string& name, const ExprPtr& replacement);

// Canonical form modulo commutativity (Add/Mul/Min/Max reordering,
// abs(a-b) == abs(b-a)). Used for the structural symmetry fast path.
ExprPtr normal_form(const ExprPtr& e);

// True when swapping x and y provably leaves the tree unchanged.
bool structurally_symmetric(const ExprPtr& e,
                            const std::string& a = "x",
                            const std::string& b = "y");

// -- evaluation ---------------------------------------------------------------

template <class S>
struct EvalEnv {
    std::vector<std::pair<std::string, S>> bindings;

    void bind(std::string name, S value) {
        for (auto& kv : bindings)
            if (kv.first == name) { kv.second = value; return; }
        bindings.emplace_back(std::move(name), std::move(value));
    }
    const S* find(const std::string& name) const {
        for (const auto& kv : bindings)
            if (kv.first == name) return &kv.second;
        return nullptr;
    }
};

struct EvalSettings {
    // Absolute threshold under which a kink discriminant counts as "at the
    // kink". 0 disables detection (plain value evaluation).
    double kink_tol = 0.0;
};

struct EvalDiag {
    int kink_count = 0;
    const Expr* first_kink = nullptr;

    void flag(const Expr* node) {
        if (kink_count == 0) first_kink = node;
        ++kink_count;
    }
};

inline double scalar_value(double v) { return v; }
inline bool scalar_has_seed(double) { return false; }
inline double scalar_seed_norm(double) { return 0.0; }
inline double scalar_seed_norm(const HyperDual& a) {
    return std::fabs(a.dx) + std::fabs(a.dy);
}

namespace detail {

// A kink counts as "at this point" when the discriminating argument sits
// within the tolerance of its zero in preimage units: |v| / |first-order
// seed| is the distance to the crossing along the evaluation path. For a
// direct variable argument (seed norm 1) this is the plain |v| <= tol test;
// for seedless arguments nothing flows through the kink at all.
template <class S>
bool near_kink(const S& u, const EvalSettings& st) {
    if (st.kink_tol <= 0.0 || !scalar_has_seed(u)) return false;
    const double n1 = scalar_seed_norm(u);
    const double v = std::fabs(scalar_value(u));
    if (n1 > 0.0) return v <= st.kink_tol * n1;
    return v <= st.kink_tol;  // only curvature flows: keep the plain test
}

} // namespace detail

namespace detail {

inline double s_sqrt(double a) { return std::sqrt(a); }
inline double s_exp(double a) { return std::exp(a); }
inline double s_log(double a) { return std::log(a); }
inline double s_pow(double a, double b) { return std::pow(a, b); }
inline HyperDual s_sqrt(const HyperDual& a) { return sqrt(a); }
inline HyperDual s_exp(const HyperDual& a) { return exp(a); }
inline HyperDual s_log(const HyperDual& a) { return log(a); }
inline HyperDual s_pow(const HyperDual& a, const HyperDual& b) { return pow_general(a, b); }

// Integer powers by repeated multiplication: exact on hyper-duals and
// bit-identical between the double and hyper-dual value slots.
template <class S>
S pow_int(const S& base, long n) {
    if (n == 0) return S(1.0);
    if (n < 0) {
        if (scalar_value(base) == 0.0) throw DomainError("zero base with negative integer exponent");
        return S(1.0) / pow_int(base, -n);
    }
    S r = base;
    for (long i = 1; i < n; ++i) r = r * base;
    return r;
}

inline bool cmp(double a, CmpOp op, double b) {
    switch (op) {
        case CmpOp::Lt: return a < b;
        case CmpOp::Le: return a <= b;
        case CmpOp::Gt: return a > b;
        case CmpOp::Ge: return a >= b;
        case CmpOp::Eq: return a == b;
    }
    return false;
}

} // namespace detail

// Evaluates e over any scalar field S (double or HyperDual). The value slot
// of the hyper-dual path runs the exact same double arithmetic as the plain
// path, so the two agree bitwise when they both succeed.
template <class S>
S eval(const Expr& e, const EvalEnv<S>& env, const EvalSettings& st = {}, EvalDiag* diag = nullptr) {
    using detail::pow_int;
    switch (e.kind) {
        case NodeKind::Const:
            return S(e.constant);
        case NodeKind::Var: {
            const S* v = env.find(e.name);
            if (!v) throw DomainError("unbound variable '" + e.name + "'");
            return *v;
        }
        case NodeKind::Neg:
            return -eval(*e.args[0], env, st, diag);
        case NodeKind::Add:
            return eval(*e.args[0], env, st, diag) + eval(*e.args[1], env, st, diag);
        case NodeKind::Sub:
            return eval(*e.args[0], env, st, diag) - eval(*e.args[1], env, st, diag);
        case NodeKind::Mul:
            return eval(*e.args[0], env, st, diag) * eval(*e.args[1], env, st, diag);
        case NodeKind::Div: {
            S a = eval(*e.args[0], env, st, diag);
            S b = eval(*e.args[1], env, st, diag);
            if (scalar_value(b) == 0.0)
                throw DomainError("division by zero in '" + pretty_print(e) + "'");
            return a / b;
        }
        case NodeKind::Pow: {
            S a = eval(*e.args[0], env, st, diag);
            const Expr& be = *e.args[1];
            if (be.kind == NodeKind::Const && be.constant == std::floor(be.constant) &&
                std::fabs(be.constant) <= 64.0) {
                return pow_int(a, static_cast<long>(be.constant));
            }
            S b = eval(be, env, st, diag);
            const double av = scalar_value(a);
            const double bv = scalar_value(b);
            if (av < 0.0)
                throw DomainError("negative base with non-integer exponent in '" +
                                  pretty_print(e) + "'");
            if (av == 0.0 && bv < 0.0)
                throw DomainError("zero base with negative exponent in '" + pretty_print(e) + "'");
            if (diag && bv < 2.0 && detail::near_kink(a, st)) diag->flag(&e);
            return detail::s_pow(a, b);
        }
        case NodeKind::Abs: {
            S a = eval(*e.args[0], env, st, diag);
            if (diag && detail::near_kink(a, st)) diag->flag(&e);
            return scalar_value(a) < 0.0 ? -a : a;
        }
        case NodeKind::Sqrt: {
            S a = eval(*e.args[0], env, st, diag);
            const double av = scalar_value(a);
            if (av < 0.0) throw DomainError("sqrt of negative value in '" + pretty_print(e) + "'");
            if (diag && detail::near_kink(a, st)) diag->flag(&e);
            return detail::s_sqrt(a);
        }
        case NodeKind::Exp:
            return detail::s_exp(eval(*e.args[0], env, st, diag));
        case NodeKind::Log: {
            S a = eval(*e.args[0], env, st, diag);
            if (scalar_value(a) <= 0.0)
                throw DomainError("log of non-positive value in '" + pretty_print(e) + "'");
            return detail::s_log(a);
        }
        case NodeKind::Min:
        case NodeKind::Max: {
            S a = eval(*e.args[0], env, st, diag);
            S b = eval(*e.args[1], env, st, diag);
            S d = a - b;
            if (diag && detail::near_kink(d, st)) diag->flag(&e);
            if (e.kind == NodeKind::Min)
                return scalar_value(b) < scalar_value(a) ? b : a;
            return scalar_value(a) < scalar_value(b) ? b : a;
        }
        case NodeKind::Sgn: {
            S a = eval(*e.args[0], env, st, diag);
            const double av = scalar_value(a);
            if (diag && detail::near_kink(a, st)) diag->flag(&e);
            return S(av > 0.0 ? 1.0 : (av < 0.0 ? -1.0 : 0.0));
        }
        case NodeKind::Piecewise: {
            for (const auto& br : e.branches) {
                S l = eval(*br.lhs, env, st, diag);
                S r = eval(*br.rhs, env, st, diag);
                S d = l - r;
                if (diag && detail::near_kink(d, st)) diag->flag(&e);
                if (detail::cmp(scalar_value(l), br.op, scalar_value(r)))
                    return eval(*br.value, env, st, diag);
            }
            return eval(*e.otherwise, env, st, diag);
        }
    }
    throw DomainError("corrupt expression node");
}

// Convenience wrappers for one- and two-variable trees.
double eval_xy(const Expr& e, double x, double y);
double eval_x(const Expr& e, double x);

} // namespace metricline
