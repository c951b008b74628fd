#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "species/errors.hpp"
#include "species/rational.hpp"

namespace species {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class AtomKind { One, X, E, En, Cn, L, Cyc, Graphs, AnalyticExp, Ident };

// Expression tree of the surface language:
//   precedence (loosest to tightest): unary minus, +/-, * and /, ^natural
//   calls: D(e), J(e), J[exp|E|const:<expr>](e), Ev(e), divpow(e,n), exp(e),
//          log(e), pow(e1,e2), comp(e1,e2), fcomp(e1,e2), ord(e), dist(e1,e2),
//          gs(e), inv(e)
//   atoms: integers, X, E, En, Cn, L, Cyc, Graphs, One, eX, e(pX), e(p/qX),
//          identifiers bound with `let` in the REPL
struct Expr {
    enum class Kind { Number, Atom, Neg, Add, Sub, Mul, Div, PowInt, Call };

    Kind kind;
    Rational number;          // Number
    AtomKind atom;            // Atom
    int index = 0;            // Atom En/Cn
    Rational lambda;          // Atom AnalyticExp
    std::string name;         // Atom Ident / Call function name
    std::string tower;        // Call "J": "exp", "E" or "const"
    long long exponent = 0;   // PowInt
    std::vector<ExprPtr> args;

    static ExprPtr number_lit(Rational v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Number;
        e->number = std::move(v);
        return e;
    }
    static ExprPtr make_atom(AtomKind a, int index = 0, Rational lambda = 1) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Atom;
        e->atom = a;
        e->index = index;
        e->lambda = std::move(lambda);
        return e;
    }
    static ExprPtr ident(std::string name) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Atom;
        e->atom = AtomKind::Ident;
        e->name = std::move(name);
        return e;
    }
    static ExprPtr unary(Kind k, ExprPtr a) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->args = {std::move(a)};
        return e;
    }
    static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->args = {std::move(a), std::move(b)};
        return e;
    }
    static ExprPtr power(ExprPtr a, long long n) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::PowInt;
        e->exponent = n;
        e->args = {std::move(a)};
        return e;
    }
    static ExprPtr call(std::string fn, std::vector<ExprPtr> args, std::string tower = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Call;
        e->name = std::move(fn);
        e->tower = std::move(tower);
        e->args = std::move(args);
        return e;
    }
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("trailing input", pos_);
        return e;
    }

private:
    std::string_view src_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    // unary minus binds loosest: -a + b parses as -(a + b)
    ExprPtr expr() {
        if (eat('-')) return Expr::unary(Expr::Kind::Neg, expr());
        return sum();
    }

    ExprPtr sum() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+')) e = Expr::binary(Expr::Kind::Add, e, term());
            else if (eat('-')) e = Expr::binary(Expr::Kind::Sub, e, term());
            else return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (eat('*')) e = Expr::binary(Expr::Kind::Mul, e, factor());
            else if (eat('/')) e = Expr::binary(Expr::Kind::Div, e, factor());
            else return e;
        }
    }

    ExprPtr factor() {
        ExprPtr e = primary();
        if (eat('^')) e = Expr::power(e, natural());
        return e;
    }

    long long natural() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected a natural number", pos_);
        return std::stoll(std::string(src_.substr(start, pos_ - start)));
    }

    Rational signed_rational() { // for e(2X), e(-1X), e(1/2X)
        skip_ws();
        bool neg = eat('-');
        Int num(std::to_string(natural()));
        Int den = 1;
        if (eat('/')) den = Int(std::to_string(natural()));
        if (den == 0) throw ParseError("zero denominator", pos_);
        Rational r(num, den);
        return neg ? -r : r;
    }

    ExprPtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr::number_lit(Rational(Int(std::to_string(natural()))));
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return ident_like();
        throw ParseError("unexpected character", pos_);
    }

    ExprPtr ident_like() {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string word(src_.substr(start, pos_ - start));

        // analytic exponential: eX or e(<rational>X)
        if (word == "eX") return Expr::make_atom(AtomKind::AnalyticExp, 0, 1);
        if (word == "e" && peek() == '(') {
            expect('(');
            Rational lam = signed_rational();
            skip_ws();
            if (pos_ >= src_.size() || src_[pos_] != 'X')
                throw ParseError("expected 'X' in e(...)", pos_);
            ++pos_;
            expect(')');
            return Expr::make_atom(AtomKind::AnalyticExp, 0, lam);
        }

        if (word == "X") return Expr::make_atom(AtomKind::X);
        if (word == "E") return Expr::make_atom(AtomKind::E);
        if (word == "L") return Expr::make_atom(AtomKind::L);
        if (word == "Cyc") return Expr::make_atom(AtomKind::Cyc);
        if (word == "Graphs") return Expr::make_atom(AtomKind::Graphs);
        if (word == "One") return Expr::make_atom(AtomKind::One);
        if (word.size() > 1 && (word[0] == 'E' || word[0] == 'C') &&
            std::all_of(word.begin() + 1, word.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            int idx = std::stoi(word.substr(1));
            if (idx < 0 || idx > 1000) throw ParseError("generator index out of range", start);
            return Expr::make_atom(word[0] == 'E' ? AtomKind::En : AtomKind::Cn, idx);
        }

        static const char* unary_fns[] = {"D", "Ev", "exp", "log", "gs", "inv", "ord"};
        static const char* binary_fns[] = {"pow", "comp", "fcomp", "dist"};
        if (word == "J") {
            std::string tower = "exp";
            std::vector<ExprPtr> args;
            if (eat('[')) {
                skip_ws();
                size_t tstart = pos_;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_]))))
                    ++pos_;
                tower = std::string(src_.substr(tstart, pos_ - tstart));
                if (tower == "const") {
                    expect(':');
                    args.push_back(expr());
                } else if (tower != "exp" && tower != "E") {
                    throw ParseError("unknown tower '" + tower + "'", tstart);
                }
                expect(']');
            }
            expect('(');
            args.push_back(expr());
            expect(')');
            return Expr::call("J", std::move(args), tower);
        }
        for (const char* fn : unary_fns) {
            if (word == fn) {
                expect('(');
                ExprPtr a = expr();
                expect(')');
                return Expr::call(fn, {a});
            }
        }
        for (const char* fn : binary_fns) {
            if (word == fn) {
                expect('(');
                ExprPtr a = expr();
                expect(',');
                ExprPtr b = expr();
                expect(')');
                return Expr::call(fn, {a, b});
            }
        }
        if (word == "divpow") {
            expect('(');
            ExprPtr a = expr();
            expect(',');
            long long n = natural();
            expect(')');
            return Expr::call("divpow", {a, Expr::number_lit(Rational(Int(n)))});
        }
        return Expr::ident(word);
    }
};

inline int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Neg: return 0;
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::PowInt: return 3;
        default: return 4;
    }
}

} // namespace detail

inline ExprPtr parse_expr(std::string_view src) { return detail::Parser(src).parse(); }

inline std::string print_expr(const Expr& e, int parent_prec = 0) {
    using K = Expr::Kind;
    int prec = detail::precedence(e);
    auto wrap = [&](const std::string& s) {
        return prec < parent_prec ? "(" + s + ")" : s;
    };
    switch (e.kind) {
        case K::Number: return rat_str(e.number);
        case K::Atom:
            switch (e.atom) {
                case AtomKind::One: return "One";
                case AtomKind::X: return "X";
                case AtomKind::E: return "E";
                case AtomKind::En: return "E" + std::to_string(e.index);
                case AtomKind::Cn: return "C" + std::to_string(e.index);
                case AtomKind::L: return "L";
                case AtomKind::Cyc: return "Cyc";
                case AtomKind::Graphs: return "Graphs";
                case AtomKind::AnalyticExp:
                    if (e.lambda == 1) return "eX";
                    return "e(" + rat_str(e.lambda) + "X)";
                case AtomKind::Ident: return e.name;
            }
            return "?";
        case K::Neg: return wrap("-" + print_expr(*e.args[0], 1));
        case K::Add:
            return wrap(print_expr(*e.args[0], 1) + " + " + print_expr(*e.args[1], 2));
        case K::Sub:
            return wrap(print_expr(*e.args[0], 1) + " - " + print_expr(*e.args[1], 2));
        case K::Mul:
            return wrap(print_expr(*e.args[0], 2) + "*" + print_expr(*e.args[1], 3));
        case K::Div:
            return wrap(print_expr(*e.args[0], 2) + "/" + print_expr(*e.args[1], 3));
        case K::PowInt:
            return wrap(print_expr(*e.args[0], 4) + "^" + std::to_string(e.exponent));
        case K::Call: {
            if (e.name == "J") {
                std::string head = "J";
                size_t arg0 = 0;
                if (e.tower == "const") {
                    head += "[const:" + print_expr(*e.args[0], 0) + "]";
                    arg0 = 1;
                } else if (e.tower == "E") {
                    head += "[E]";
                }
                return head + "(" + print_expr(*e.args[arg0], 0) + ")";
            }
            std::string s = e.name + "(";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) s += ", ";
                s += print_expr(*e.args[i], 0);
            }
            return s + ")";
        }
    }
    return "?";
}

} // namespace species
