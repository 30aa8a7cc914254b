#include "metricline/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace metricline {

ExprPtr make_const(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::Const;
    e->constant = v;
    return e;
}

ExprPtr make_var(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::Var;
    e->name = std::move(name);
    return e;
}

ExprPtr make_unary(NodeKind k, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = {std::move(a)};
    return e;
}

ExprPtr make_binary(NodeKind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = {std::move(a), std::move(b)};
    return e;
}

ExprPtr make_piecewise(std::vector<PiecewiseBranch> branches, ExprPtr otherwise) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::Piecewise;
    e->branches = std::move(branches);
    e->otherwise = std::move(otherwise);
    return e;
}

double eval_xy(const Expr& e, double x, double y) {
    EvalEnv<double> env;
    env.bind("x", x);
    env.bind("y", y);
    return eval(e, env);
}

double eval_x(const Expr& e, double x) {
    EvalEnv<double> env;
    env.bind("x", x);
    return eval(e, env);
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Parser {
    std::string_view src;
    std::size_t pos = 0;
    const std::vector<std::string>* vars;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= src.size();
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) { ++pos; return true; }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(pos, std::string("expected ") + what);
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos, msg); }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = make_binary(NodeKind::Add, lhs, parse_term());
            else if (accept('-')) lhs = make_binary(NodeKind::Sub, lhs, parse_term());
            else return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            if (accept('*')) lhs = make_binary(NodeKind::Mul, lhs, parse_factor());
            else if (accept('/')) lhs = make_binary(NodeKind::Div, lhs, parse_factor());
            else return lhs;
        }
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_base();
        if (accept('^')) return make_binary(NodeKind::Pow, base, parse_factor());
        return base;
    }

    ExprPtr parse_base() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of input");
        char c = src[pos];
        if (c == '-') { ++pos; return make_unary(NodeKind::Neg, parse_base()); }
        if (c == '(') {
            ++pos;
            ExprPtr e = parse_expr();
            expect(')', "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        fail("unexpected character");
    }

    ExprPtr parse_number() {
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos < src.size() && src[pos] == '.') {
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            } else {
                pos = mark;  // 'e' belongs to something else
            }
        }
        std::string text(src.substr(start, pos - start));
        if (text.empty() || text == ".") { pos = start; fail("malformed number"); }
        return make_const(std::strtod(text.c_str(), nullptr));
    }

    ExprPtr parse_ident() {
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        std::string name(src.substr(start, pos - start));

        if (peek() == '(') return parse_call(name, start);

        for (const auto& v : *vars)
            if (v == name) return make_var(name);
        pos = start;
        fail("unknown identifier '" + name + "'");
    }

    CmpOp parse_cmp_op() {
        skip_ws();
        if (pos + 1 < src.size()) {
            std::string_view two = src.substr(pos, 2);
            if (two == "<=") { pos += 2; return CmpOp::Le; }
            if (two == ">=") { pos += 2; return CmpOp::Ge; }
            if (two == "==") { pos += 2; return CmpOp::Eq; }
        }
        if (accept('<')) return CmpOp::Lt;
        if (accept('>')) return CmpOp::Gt;
        fail("expected comparison operator");
    }

    ExprPtr parse_call(const std::string& name, std::size_t name_start) {
        expect('(', "'('");
        if (name == "pw") {
            std::vector<PiecewiseBranch> branches;
            for (;;) {
                // a pw argument list is cond, value, cond, value, ..., else
                ExprPtr first = parse_expr();
                skip_ws();
                if (peek() == ',' || peek() == ')') {
                    // `first` was the trailing else expression
                    if (accept(')')) {
                        if (branches.empty())
                            throw ParseError(name_start, "pw needs at least one condition branch");
                        return make_piecewise(std::move(branches), first);
                    }
                    // not closing: `first` must have been a full condition's lhs
                    fail("expected comparison in pw condition");
                }
                PiecewiseBranch br;
                br.lhs = first;
                br.op = parse_cmp_op();
                br.rhs = parse_expr();
                expect(',', "',' after pw condition");
                br.value = parse_expr();
                branches.push_back(std::move(br));
                if (accept(',')) continue;
                fail("pw requires a final else expression");
            }
        }

        std::vector<ExprPtr> args;
        args.push_back(parse_expr());
        while (accept(',')) args.push_back(parse_expr());
        expect(')', "')'");

        auto want = [&](std::size_t n, NodeKind k) {
            if (args.size() != n)
                throw ParseError(name_start, "function '" + name + "' expects " +
                                                 std::to_string(n) + " argument(s)");
            if (n == 1) return make_unary(k, args[0]);
            return make_binary(k, args[0], args[1]);
        };
        if (name == "abs") return want(1, NodeKind::Abs);
        if (name == "sqrt") return want(1, NodeKind::Sqrt);
        if (name == "exp") return want(1, NodeKind::Exp);
        if (name == "log") return want(1, NodeKind::Log);
        if (name == "sgn") return want(1, NodeKind::Sgn);
        if (name == "min") return want(2, NodeKind::Min);
        if (name == "max") return want(2, NodeKind::Max);
        throw ParseError(name_start, "unknown function '" + name + "'");
    }
};

} // namespace

ExprPtr parse(std::string_view source, const std::vector<std::string>& vars) {
    Parser p{source, 0, &vars};
    ExprPtr e = p.parse_expr();
    if (!p.eof()) p.fail("trailing input");
    return e;
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
        case CmpOp::Eq: return "==";
    }
    return "?";
}

// Precedence levels: additive 1, multiplicative 2, power 3, atoms 4.
int precedence(const Expr& e) {
    switch (e.kind) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Pow: return 3;
        case NodeKind::Neg: return 3;  // prints as "-base"
        default: return 4;
    }
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
    if (precedence(child) < min_prec) {
        out += '(';
        print(child, out);
        out += ')';
    } else {
        print(child, out);
    }
}

void print_call(const char* name, const Expr& e, std::string& out) {
    out += name;
    out += '(';
    for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print(*e.args[i], out);
    }
    out += ')';
}

void print(const Expr& e, std::string& out) {
    switch (e.kind) {
        case NodeKind::Const: out += format_number(e.constant); return;
        case NodeKind::Var: out += e.name; return;
        case NodeKind::Neg:
            out += '-';
            print_child(*e.args[0], 4, out);
            return;
        case NodeKind::Add:
            print_child(*e.args[0], 1, out);
            out += " + ";
            print_child(*e.args[1], 2, out);
            return;
        case NodeKind::Sub:
            print_child(*e.args[0], 1, out);
            out += " - ";
            print_child(*e.args[1], 2, out);
            return;
        case NodeKind::Mul:
            print_child(*e.args[0], 2, out);
            out += "*";
            print_child(*e.args[1], 3, out);
            return;
        case NodeKind::Div:
            print_child(*e.args[0], 2, out);
            out += "/";
            print_child(*e.args[1], 3, out);
            return;
        case NodeKind::Pow:
            print_child(*e.args[0], 4, out);
            out += "^";
            print_child(*e.args[1], 3, out);
            return;
        case NodeKind::Abs: print_call("abs", e, out); return;
        case NodeKind::Sqrt: print_call("sqrt", e, out); return;
        case NodeKind::Exp: print_call("exp", e, out); return;
        case NodeKind::Log: print_call("log", e, out); return;
        case NodeKind::Min: print_call("min", e, out); return;
        case NodeKind::Max: print_call("max", e, out); return;
        case NodeKind::Sgn: print_call("sgn", e, out); return;
        case NodeKind::Piecewise: {
            out += "pw(";
            for (const auto& br : e.branches) {
                print(*br.lhs, out);
                out += ' ';
                out += cmp_text(br.op);
                out += ' ';
                print(*br.rhs, out);
                out += ", ";
                print(*br.value, out);
                out += ", ";
            }
            print(*e.otherwise, out);
            out += ')';
            return;
        }
    }
}

} // namespace

std::string pretty_print(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// structure

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Const:
            return a.constant == b.constant ||
                   (std::isnan(a.constant) && std::isnan(b.constant));
        case NodeKind::Var:
            return a.name == b.name;
        default: break;
    }
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!structurally_equal(*a.args[i], *b.args[i])) return false;
    if (a.kind == NodeKind::Piecewise) {
        if (a.branches.size() != b.branches.size()) return false;
        for (std::size_t i = 0; i < a.branches.size(); ++i) {
            const auto& x = a.branches[i];
            const auto& y = b.branches[i];
            if (x.op != y.op || !structurally_equal(*x.lhs, *y.lhs) ||
                !structurally_equal(*x.rhs, *y.rhs) || !structurally_equal(*x.value, *y.value))
                return false;
        }
        if (!a.otherwise != !b.otherwise) return false;
        if (a.otherwise && !structurally_equal(*a.otherwise, *b.otherwise)) return false;
    }
    return true;
}

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e.kind == NodeKind::Var) { out.insert(e.name); return; }
    for (const auto& a : e.args) collect_vars(*a, out);
    for (const auto& br : e.branches) {
        collect_vars(*br.lhs, out);
        collect_vars(*br.rhs, out);
        collect_vars(*br.value, out);
    }
    if (e.otherwise) collect_vars(*e.otherwise, out);
}

template <class Fn>
ExprPtr map_tree(const ExprPtr& e, const Fn& fn) {
    // fn(ExprPtr) -> ExprPtr or nullptr to recurse structurally
    if (ExprPtr replaced = fn(e)) return replaced;
    auto copy = std::make_shared<Expr>(*e);
    for (auto& a : copy->args) a = map_tree(a, fn);
    for (auto& br : copy->branches) {
        br.lhs = map_tree(br.lhs, fn);
        br.rhs = map_tree(br.rhs, fn);
        br.value = map_tree(br.value, fn);
    }
    if (copy->otherwise) copy->otherwise = map_tree(copy->otherwise, fn);
    return copy;
}

} // namespace

std::set<std::string> free_vars(const Expr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

ExprPtr swap_vars(const ExprPtr& e, const std::string& a, const std::string& b) {
    return map_tree(e, [&](const ExprPtr& n) -> ExprPtr {
        if (n->kind != NodeKind::Var) return nullptr;
        if (n->name == a) return make_var(b);
        if (n->name == b) return make_var(a);
        return n;
    });
}

ExprPtr substitute(const ExprPtr& e, const std::string& name, const ExprPtr& replacement) {
    return map_tree(e, [&](const ExprPtr& n) -> ExprPtr {
        if (n->kind != NodeKind::Var) return nullptr;
        return n->name == name ? replacement : n;
    });
}

namespace {

// Flattens nested Add (resp. Mul) chains into a list of operands.
void flatten(NodeKind k, const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (e->kind == k) {
        flatten(k, e->args[0], out);
        flatten(k, e->args[1], out);
    } else {
        out.push_back(e);
    }
}

ExprPtr rebuild(NodeKind k, std::vector<ExprPtr> ops) {
    ExprPtr acc = ops[0];
    for (std::size_t i = 1; i < ops.size(); ++i) acc = make_binary(k, acc, ops[i]);
    return acc;
}

void sort_by_print(std::vector<ExprPtr>& ops) {
    std::stable_sort(ops.begin(), ops.end(), [](const ExprPtr& a, const ExprPtr& b) {
        return pretty_print(*a) < pretty_print(*b);
    });
}

} // namespace

ExprPtr normal_form(const ExprPtr& e) {
    auto node = std::make_shared<Expr>(*e);
    for (auto& a : node->args) a = normal_form(a);
    for (auto& br : node->branches) {
        br.lhs = normal_form(br.lhs);
        br.rhs = normal_form(br.rhs);
        br.value = normal_form(br.value);
    }
    if (node->otherwise) node->otherwise = normal_form(node->otherwise);

    switch (node->kind) {
        case NodeKind::Add:
        case NodeKind::Mul: {
            std::vector<ExprPtr> ops;
            flatten(node->kind, node, ops);
            sort_by_print(ops);
            return rebuild(node->kind, std::move(ops));
        }
        case NodeKind::Min:
        case NodeKind::Max: {
            std::vector<ExprPtr> ops = node->args;
            sort_by_print(ops);
            node->args = std::move(ops);
            return node;
        }
        case NodeKind::Abs: {
            // abs(a - b) == abs(b - a); order the operands canonically
            const ExprPtr& inner = node->args[0];
            if (inner->kind == NodeKind::Sub) {
                std::string ka = pretty_print(*inner->args[0]);
                std::string kb = pretty_print(*inner->args[1]);
                if (kb < ka)
                    node->args[0] = make_binary(NodeKind::Sub, inner->args[1], inner->args[0]);
            }
            return node;
        }
        default:
            return node;
    }
}

bool structurally_symmetric(const ExprPtr& e, const std::string& a, const std::string& b) {
    ExprPtr lhs = normal_form(e);
    ExprPtr rhs = normal_form(swap_vars(e, a, b));
    return structurally_equal(*lhs, *rhs);
}

} // namespace metricline
