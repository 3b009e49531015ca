#ifndef CRSPHERE_EXPR_PARSER_HPP
#define CRSPHERE_EXPR_PARSER_HPP

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "gauss_rat.hpp"
#include "trunc_series.hpp"

namespace crs {

// Grammar (whitespace insignificant, '*' mandatory):
//   expr     := term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := ('-' | '+') factor | base ('^' uint)?
//   base     := rational | 'i' | var | '(' expr ')'
//   rational := int ('/' uint)?

inline constexpr unsigned kMaxExponent = 255;

struct ExprAst {
    enum class Kind { Number, ImaginaryUnit, Variable, Add, Sub, Neg, Mul, Pow, Paren };

    Kind kind = Kind::Number;
    std::vector<std::unique_ptr<ExprAst>> children;
    mpq_class number;       // Number
    std::size_t var = 0;    // Variable: index into the declared list
    unsigned exponent = 0;  // Pow
    std::size_t position = 0;
};

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, const VarList& vars) : text_(text), vars_(vars) {}

    std::unique_ptr<ExprAst> parse() {
        auto e = parseExpr();
        skipSpace();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, pos_); }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skipSpace();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static std::unique_ptr<ExprAst> node(ExprAst::Kind k, std::size_t pos) {
        auto n = std::make_unique<ExprAst>();
        n->kind = k;
        n->position = pos;
        return n;
    }

    std::unique_ptr<ExprAst> parseExpr() {
        auto lhs = parseTerm();
        for (;;) {
            skipSpace();
            std::size_t at = pos_;
            ExprAst::Kind k;
            if (accept('+'))
                k = ExprAst::Kind::Add;
            else if (accept('-'))
                k = ExprAst::Kind::Sub;
            else
                return lhs;
            auto n = node(k, at);
            n->children.push_back(std::move(lhs));
            n->children.push_back(parseTerm());
            lhs = std::move(n);
        }
    }

    std::unique_ptr<ExprAst> parseTerm() {
        auto lhs = parseFactor();
        for (;;) {
            skipSpace();
            std::size_t at = pos_;
            if (!accept('*')) return lhs;
            auto n = node(ExprAst::Kind::Mul, at);
            n->children.push_back(std::move(lhs));
            n->children.push_back(parseFactor());
            lhs = std::move(n);
        }
    }

    std::unique_ptr<ExprAst> parseFactor() {
        skipSpace();
        std::size_t at = pos_;
        if (accept('-')) {
            auto n = node(ExprAst::Kind::Neg, at);
            n->children.push_back(parseFactor());
            return n;
        }
        if (accept('+')) return parseFactor();
        auto base = parseBase();
        skipSpace();
        at = pos_;
        if (!accept('^')) return base;
        auto n = node(ExprAst::Kind::Pow, at);
        skipSpace();
        n->exponent = parseUint("exponent");
        n->children.push_back(std::move(base));
        return n;
    }

    unsigned parseUint(const char* what) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail(std::string("expected ") + what);
        std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 6 || std::stoul(digits) > kMaxExponent)
            throw ParseError("exponent overflow (maximum " + std::to_string(kMaxExponent) + ")", start);
        return static_cast<unsigned>(std::stoul(digits));
    }

    std::string digitRun() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::unique_ptr<ExprAst> parseBase() {
        skipSpace();
        std::size_t at = pos_;
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto n = node(ExprAst::Kind::Paren, at);
            n->children.push_back(parseExpr());
            if (!accept(')')) fail("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto n = node(ExprAst::Kind::Number, at);
            mpz_class num(digitRun());
            mpz_class den = 1;
            skipSpace();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skipSpace();
                std::string d = digitRun();
                if (d.empty()) fail("expected denominator");
                den = mpz_class(d);
                if (den == 0) throw ParseError("zero denominator", at);
            }
            n->number = mpq_class(num, den);
            n->number.canonicalize();
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            for (std::size_t v = 0; v < vars_.size(); ++v) {
                if (vars_[v] == name) {
                    auto n = node(ExprAst::Kind::Variable, at);
                    n->var = v;
                    return n;
                }
            }
            if (name == "i") return node(ExprAst::Kind::ImaginaryUnit, at);
            throw ParseError("undeclared variable '" + name + "'", start);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const VarList& vars_;
    std::size_t pos_ = 0;
};

inline TruncSeries evaluate(const ExprAst& n, const VarList& vars, int k) {
    using K = ExprAst::Kind;
    switch (n.kind) {
    case K::Number:
        return TruncSeries::constant(vars, GaussRat(n.number), k);
    case K::ImaginaryUnit:
        return TruncSeries::constant(vars, GaussRat::i(), k);
    case K::Variable:
        return TruncSeries::variable(vars, vars[n.var], k);
    case K::Paren:
        return evaluate(*n.children[0], vars, k);
    case K::Neg:
        return -evaluate(*n.children[0], vars, k);
    case K::Add:
        return evaluate(*n.children[0], vars, k) + evaluate(*n.children[1], vars, k);
    case K::Sub:
        return evaluate(*n.children[0], vars, k) - evaluate(*n.children[1], vars, k);
    case K::Mul:
        return evaluate(*n.children[0], vars, k).multiply(evaluate(*n.children[1], vars, k), k);
    case K::Pow:
        return evaluate(*n.children[0], vars, k).pow(n.exponent, k);
    }
    throw InternalError("unhandled expression node");
}

} // namespace detail

/// Parses `text` into an abstract syntax tree over the declared variables.
/// The name `i` is the imaginary unit unless declared as a variable.
inline std::unique_ptr<ExprAst> parseExpr(std::string_view text, const VarList& vars) {
    return detail::ExprParser(text, vars).parse();
}

/// Parses a polynomial expression into a series over `vars`, truncated to K.
inline TruncSeries parseSeries(std::string_view text, const VarList& vars, int k) {
    auto ast = parseExpr(text, vars);
    return detail::evaluate(*ast, vars, k).withKnownOrder(k);
}

/// Canonical text of a series' stored terms (ascending graded-lex), in the
/// input grammar, so that parseSeries(toText(f), f.vars(), K) == f.
inline std::string toText(const TruncSeries& f) {
    if (f.isZero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        const GaussRat& c = t.coeff;
        bool negative = false;
        std::string coeffText;
        if (c.isReal()) {
            negative = sgn(c.re()) < 0;
            mpq_class a = abs(c.re());
            if (a != 1 || t.index.degree() == 0) coeffText = a.get_str();
        } else if (sgn(c.re()) == 0) {
            negative = sgn(c.im()) < 0;
            mpq_class a = abs(c.im());
            coeffText = a == 1 ? "i" : a.get_str() + "*i";
        } else {
            coeffText = "(" + c.toString() + ")";
        }
        std::string mono;
        for (std::size_t v = 0; v < f.arity(); ++v) {
            int e = t.index.exponent(v);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += f.vars()[v];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        std::string body = coeffText;
        if (!mono.empty()) body = body.empty() ? mono : body + "*" + mono;
        if (first)
            out += negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

} // namespace crs

#endif // CRSPHERE_EXPR_PARSER_HPP
