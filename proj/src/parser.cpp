#include "probe/parser.hpp"

#include <charconv>
#include <limits>
#include <cctype>
#include <set>

namespace probe {

namespace {

struct Token {
    enum class Type { Ident, Number, Punct, End };
    Type type = Type::End;
    std::string text;
    SourceLoc loc;
};

// Longest match first.
const char* const kPuncts[] = {
    "->", "<>", "<=", ">=", "!=", "&&", "||", "..",
    "(", ")", "[", "]", ",", ";", ":", ".", "+", "-", "*", "/", "^", "=", "<", ">", "!", "#",
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.loc = {line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            t.type = Token::Type::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto digit_at = [&](std::size_t k) { return k < src.size() && std::isdigit(static_cast<unsigned char>(src[k])); };
            std::size_t j = i;
            while (digit_at(j)) ++j;
            if (j < src.size() && src[j] == '.' && digit_at(j + 1)) {
                ++j;
                while (digit_at(j)) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (digit_at(k)) {
                    j = k;
                    while (digit_at(j)) ++j;
                }
            }
            t.type = Token::Type::Number;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        bool matched = false;
        for (const char* p : kPuncts) {
            std::string_view pv(p);
            if (src.substr(i, pv.size()) == pv) {
                t.type = Token::Type::Punct;
                t.text = std::string(pv);
                advance(pv.size());
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", {line, col});
    }
    Token end;
    end.type = Token::Type::End;
    end.loc = {line, col};
    out.push_back(end);
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Spec spec() {
        Spec s;
        while (true) {
            if (is_ident("act")) {
                act_decl(s);
            } else if (is_ident("proc")) {
                proc_decl(s);
            } else if (is_ident("init")) {
                next();
                s.init = proc();
                expect(";");
                break;
            } else {
                fail("expected 'act', 'proc' or 'init'");
            }
        }
        if (peek().type != Token::Type::End) fail("unexpected input after init declaration");
        for (auto& [name, eq] : s.equations) eq.body = resolve(eq.body, s);
        s.init = resolve(s.init, s);
        return s;
    }

    Expr standalone_expr() {
        Expr e = expr();
        expect_end();
        return e;
    }

    DensitySpec standalone_density() {
        DensitySpec d = density();
        expect_end();
        return d;
    }

    Sort standalone_sort() {
        Sort s = sort();
        expect_end();
        return s;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool is_punct(const char* p, std::size_t ahead = 0) const {
        return peek(ahead).type == Token::Type::Punct && peek(ahead).text == p;
    }
    bool is_ident(const char* p) const { return peek().type == Token::Type::Ident && peek().text == p; }
    bool accept(const char* p) {
        if (!is_punct(p)) return false;
        next();
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string found = t.type == Token::Type::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(msg + ", found " + found, t.loc);
    }
    void expect(const char* p) {
        if (!accept(p)) fail(std::string("expected '") + p + "'");
    }
    void expect_end() {
        if (peek().type != Token::Type::End) fail("unexpected trailing input");
    }
    std::string name() {
        if (peek().type != Token::Type::Ident) fail("expected a name");
        return next().text;
    }

    static bool is_keyword(const std::string& s) {
        static const std::set<std::string> kw = {"act", "proc", "init", "delta", "sum", "dist",
                                                 "true", "false", "if", "inf"};
        return kw.count(s) > 0;
    }

    std::string binder_name() {
        SourceLoc loc = peek().loc;
        std::string n = name();
        if (is_keyword(n)) throw ParseError("reserved word '" + n + "' used as a name", loc);
        return n;
    }

    // -- declarations ------------------------------------------------------

    void act_decl(Spec& s) {
        next();
        std::vector<std::pair<std::string, SourceLoc>> names;
        do {
            SourceLoc loc = peek().loc;
            names.emplace_back(binder_name(), loc);
        } while (accept(","));
        std::vector<Sort> sorts;
        if (accept(":")) {
            sorts.push_back(sort());
            while (accept("#")) sorts.push_back(sort());
        }
        expect(";");
        for (auto& [n, loc] : names) {
            if (s.find_action(n)) throw ParseError("action '" + n + "' declared twice", loc);
            s.actions.push_back({n, sorts, loc});
        }
    }

    void proc_decl(Spec& s) {
        next();
        SourceLoc loc = peek().loc;
        std::string n = binder_name();
        Equation eq;
        eq.loc = loc;
        if (accept("(")) {
            do {
                std::string p = binder_name();
                expect(":");
                eq.params.push_back({p, sort()});
            } while (accept(","));
            expect(")");
        }
        expect("=");
        eq.body = proc();
        expect(";");
        if (!s.equations.emplace(n, std::move(eq)).second)
            throw ParseError("process '" + n + "' defined twice", loc);
    }

    Sort sort() {
        const Token& t = peek();
        if (t.type == Token::Type::Ident) {
            std::string n = t.text;
            if (n == "Bool") return next(), Sort::boolean();
            if (n == "Nat") return next(), Sort::nat();
            if (n == "Int") return next(), Sort::integer();
            if (n == "Real") return next(), Sort::real();
            throw ParseError("unknown sort '" + n + "'", t.loc);
        }
        if (is_punct("[")) {
            SourceLoc loc = t.loc;
            next();
            std::int64_t lo = int_literal();
            expect("..");
            std::int64_t hi = int_literal();
            expect("]");
            if (lo > hi) throw ParseError("empty range sort", loc);
            return Sort::range(lo, hi);
        }
        fail("expected a sort");
    }

    std::int64_t int_literal() {
        bool neg = accept("-");
        const Token& t = peek();
        if (t.type != Token::Type::Number || t.text.find_first_not_of("0123456789") != std::string::npos)
            fail("expected an integer");
        std::int64_t v = 0;
        auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (res.ec != std::errc()) throw ParseError("integer out of range", t.loc);
        next();
        return neg ? -v : v;
    }

    // -- processes ---------------------------------------------------------

    ProcExpr proc() {
        ProcExpr p = term();
        while (is_punct("+")) {
            SourceLoc loc = next().loc;
            p = pr::alt(p, term(), loc);
        }
        return p;
    }

    ProcExpr term() {
        ProcExpr p = factor();
        while (is_punct(".")) {
            SourceLoc loc = next().loc;
            p = pr::seq(p, factor(), loc);
        }
        return p;
    }

    ProcExpr factor() {
        const Token& t = peek();
        SourceLoc loc = t.loc;
        if (t.type == Token::Type::Ident) {
            if (t.text == "delta") {
                next();
                return pr::delta(loc);
            }
            if (t.text == "sum") {
                next();
                std::string v = binder_name();
                expect(":");
                Sort s = sort();
                expect(".");
                return pr::sum(v, s, factor(), loc);
            }
            if (t.text == "dist") {
                next();
                std::string v = binder_name();
                expect(":");
                Sort s = sort();
                expect("[");
                DensitySpec d = density();
                expect("]");
                expect(".");
                return pr::dist(v, s, std::move(d), factor(), loc);
            }
            std::string n = binder_name();
            std::vector<Expr> args;
            if (accept("(")) {
                args.push_back(expr());
                while (accept(",")) args.push_back(expr());
                expect(")");
            }
            return pr::action(n, std::move(args), loc);
        }
        if (is_punct("(")) {
            std::size_t save = pos_;
            next();
            Expr c;
            bool is_cond = false;
            try {
                c = expr();
                is_cond = accept(")") && is_punct("->");
            } catch (const ParseError&) {
                is_cond = false;
            }
            if (is_cond) {
                next();
                ProcExpr then_p = factor();
                ProcExpr else_p = accept("<>") ? factor() : nullptr;
                return pr::cond(c, then_p, else_p, loc);
            }
            pos_ = save;
            next();
            ProcExpr p = proc();
            expect(")");
            return p;
        }
        fail("expected a process expression");
    }

    ProcExpr resolve(const ProcExpr& p, const Spec& s) {
        using K = ProcNode::Kind;
        switch (p->kind) {
        case K::Action:
            if (s.find_equation(p->name)) return pr::ref(p->name, p->args, p->loc);
            return p;
        case K::Seq: return pr::seq(resolve(p->children[0], s), resolve(p->children[1], s), p->loc);
        case K::Alt: return pr::alt(resolve(p->children[0], s), resolve(p->children[1], s), p->loc);
        case K::Cond:
            return pr::cond(p->args[0], resolve(p->children[0], s), resolve(p->children[1], s), p->loc);
        case K::Sum: return pr::sum(p->var, p->sort, resolve(p->children[0], s), p->loc);
        case K::Dist: return pr::dist(p->var, p->sort, p->density, resolve(p->children[0], s), p->loc);
        default: return p;
        }
    }

    // -- data --------------------------------------------------------------

    DensitySpec density() {
        const Token& t = peek();
        if (t.type == Token::Type::Ident && is_punct("(", 1)) {
            std::size_t arity = 0;
            DensitySpec::Kind kind{};
            if (t.text == "Uniform") {
                kind = DensitySpec::Kind::Uniform;
                arity = 2;
            } else if (t.text == "Exp") {
                kind = DensitySpec::Kind::Exponential;
                arity = 1;
            } else if (t.text == "NormalTrunc") {
                kind = DensitySpec::Kind::NormalTrunc;
                arity = 4;
            }
            if (arity > 0) {
                SourceLoc loc = t.loc;
                next();
                expect("(");
                std::vector<Expr> params{expr()};
                while (accept(",")) params.push_back(expr());
                expect(")");
                if (params.size() != arity)
                    throw ParseError("malformed distribution constructor " + std::string(t.text) + ": expected " +
                                         std::to_string(arity) + " parameters",
                                     loc);
                return DensitySpec{kind, std::move(params)};
            }
        }
        return DensitySpec::pmf(expr());
    }

    Expr expr() { return or_expr(); }

    Expr or_expr() {
        Expr e = and_expr();
        while (is_punct("||")) {
            SourceLoc loc = next().loc;
            e = ex::binary(Op::Or, e, and_expr(), loc);
        }
        return e;
    }

    Expr and_expr() {
        Expr e = cmp_expr();
        while (is_punct("&&")) {
            SourceLoc loc = next().loc;
            e = ex::binary(Op::And, e, cmp_expr(), loc);
        }
        return e;
    }

    Expr cmp_expr() {
        Expr e = add_expr();
        static const std::pair<const char*, Op> ops[] = {
            {"=", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le}, {">=", Op::Ge}, {"<", Op::Lt}, {">", Op::Gt}};
        for (auto [sym, op] : ops) {
            if (is_punct(sym)) {
                SourceLoc loc = next().loc;
                return ex::binary(op, e, add_expr(), loc);
            }
        }
        return e;
    }

    Expr add_expr() {
        Expr e = mul_expr();
        while (is_punct("+") || is_punct("-")) {
            Op op = peek().text == "+" ? Op::Add : Op::Sub;
            SourceLoc loc = next().loc;
            e = ex::binary(op, e, mul_expr(), loc);
        }
        return e;
    }

    Expr mul_expr() {
        Expr e = unary_expr();
        while (is_punct("*") || is_punct("/")) {
            Op op = peek().text == "*" ? Op::Mul : Op::Div;
            SourceLoc loc = next().loc;
            e = ex::binary(op, e, unary_expr(), loc);
        }
        return e;
    }

    Expr unary_expr() {
        if (is_punct("-")) {
            SourceLoc loc = next().loc;
            return ex::unary(Op::Neg, unary_expr(), loc);
        }
        if (is_punct("!")) {
            SourceLoc loc = next().loc;
            return ex::unary(Op::Not, unary_expr(), loc);
        }
        Expr base = primary();
        if (is_punct("^")) {
            SourceLoc loc = next().loc;
            return ex::binary(Op::Pow, base, unary_expr(), loc);
        }
        return base;
    }

    Expr primary() {
        const Token& t = peek();
        SourceLoc loc = t.loc;
        if (t.type == Token::Type::Number) {
            std::string text = next().text;
            if (text.find_first_of(".eE") == std::string::npos) return ex::lit(Value::integer(mpz_class(text)), loc);
            double d = 0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), d);
            if (res.ec != std::errc()) throw ParseError("malformed number '" + text + "'", loc);
            return ex::lit(Value::real(d), loc);
        }
        if (t.type == Token::Type::Ident) {
            std::string n = next().text;
            if (n == "true") return ex::lit(Value::boolean(true), loc);
            if (n == "false") return ex::lit(Value::boolean(false), loc);
            if (n == "inf") return ex::lit(Value::real(std::numeric_limits<double>::infinity()), loc);
            if (n == "if") {
                expect("(");
                Expr c = expr();
                expect(",");
                Expr a = expr();
                expect(",");
                Expr b = expr();
                expect(")");
                return ex::if_(c, a, b, loc);
            }
            if (is_keyword(n)) throw ParseError("unexpected keyword '" + n + "' in expression", loc);
            if (is_punct("(")) throw ParseError("unknown function '" + n + "'", loc);
            return ex::var(n, loc);
        }
        if (accept("(")) {
            Expr e = expr();
            expect(")");
            return e;
        }
        fail("expected an expression");
    }
};

} // namespace

Spec parse_spec(std::string_view text) { return Parser(text).spec(); }

Expr parse_expr(std::string_view text) { return Parser(text).standalone_expr(); }

DensitySpec parse_density(std::string_view text) { return Parser(text).standalone_density(); }

Sort parse_sort(std::string_view text) { return Parser(text).standalone_sort(); }

} // namespace probe
