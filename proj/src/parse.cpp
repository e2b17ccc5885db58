#include "iif/parse.hpp"

#include <cctype>
#include <optional>

#include "iif/error.hpp"

namespace iif {

namespace {

struct Token {
    enum Kind { Number, Ident, Symbol, End } kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : src_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({Token::End, "", line_, col_});
                return out;
            }
            char c = src_[pos_];
            int l = line_, cl = col_;
            if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() &&
                                                                 std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                std::string t;
                while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
                    t += advance();
                out.push_back({Token::Number, t, l, cl});
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string t;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    t += advance();
                while (pos_ < src_.size() && src_[pos_] == '\'') t += advance();
                out.push_back({Token::Ident, t, l, cl});
            } else if (std::string_view("+-*/^(),=;").find(c) != std::string_view::npos) {
                out.push_back({Token::Symbol, std::string(1, advance()), l, cl});
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
            }
        }
    }

private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

DarbouxExpr as_darboux(const ParsedExpr& e) {
    if (const Frac* f = std::get_if<Frac>(&e)) return DarbouxExpr::from_frac(*f);
    return std::get<DarbouxExpr>(e);
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    ParsedExpr expression() {
        ParsedExpr lhs = term();
        while (peek_symbol("+") || peek_symbol("-")) {
            Token op = next();
            ParsedExpr rhs = term();
            const Frac* a = std::get_if<Frac>(&lhs);
            const Frac* b = std::get_if<Frac>(&rhs);
            if (!a || !b) throw ParseError("sums of non-rational factors are not supported", op.line, op.column);
            lhs = op.text == "+" ? *a + *b : *a - *b;
        }
        return lhs;
    }

    bool peek_symbol(const char* s) const { return t_[i_].kind == Token::Symbol && t_[i_].text == s; }
    bool at_end() const { return t_[i_].kind == Token::End; }
    const Token& peek() const { return t_[i_]; }
    Token next() { return t_[i_++]; }

    void expect(const char* s) {
        if (!peek_symbol(s)) fail(std::string("expected '") + s + "'");
        ++i_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = t_[i_];
        throw ParseError(what + (t.kind == Token::End ? " at end of input" : " near '" + t.text + "'"), t.line,
                         t.column);
    }

private:
    ParsedExpr term() {
        ParsedExpr lhs = unary();
        while (peek_symbol("*") || peek_symbol("/")) {
            Token op = next();
            ParsedExpr rhs = unary();
            const Frac* a = std::get_if<Frac>(&lhs);
            const Frac* b = std::get_if<Frac>(&rhs);
            if (a && b) {
                if (op.text == "/" && b->is_zero()) throw ParseError("division by zero", op.line, op.column);
                lhs = op.text == "*" ? *a * *b : *a / *b;
            } else {
                DarbouxExpr r = as_darboux(rhs);
                lhs = op.text == "*" ? as_darboux(lhs) * r : as_darboux(lhs) * r.pow(Frac(-1));
            }
        }
        return lhs;
    }

    ParsedExpr unary() {
        if (peek_symbol("-")) {
            Token op = next();
            ParsedExpr v = unary();
            if (const Frac* f = std::get_if<Frac>(&v)) return -*f;
            DarbouxExpr d = std::get<DarbouxExpr>(v);
            d.scale(Frac(-1));
            return d;
        }
        if (peek_symbol("+")) next();
        return power();
    }

    ParsedExpr power() {
        ParsedExpr base = atom();
        if (!peek_symbol("^")) return base;
        Token op = next();
        ParsedExpr ex = unary();
        const Frac* e = std::get_if<Frac>(&ex);
        if (!e || e->contains(var_x()) || e->contains(var_y()))
            throw ParseError("exponent must be a constant expression", op.line, op.column);
        if (const Frac* b = std::get_if<Frac>(&base)) {
            if (e->is_rational() && is_integer(e->rational_value())) {
                const Rat r = e->rational_value();
                if (!r.get_num().fits_sint_p()) throw ParseError("exponent too large", op.line, op.column);
                if (b->is_zero() && r < 0) throw ParseError("division by zero", op.line, op.column);
                return b->pow(static_cast<int>(r.get_num().get_si()));
            }
        }
        return as_darboux(base).pow(*e);
    }

    ParsedExpr atom() {
        const Token& t = peek();
        if (t.kind == Token::Number) {
            next();
            try {
                return Frac(parse_rat(t.text));
            } catch (const std::exception&) {
                throw ParseError("malformed number '" + t.text + "'", t.line, t.column);
            }
        }
        if (peek_symbol("(")) {
            next();
            ParsedExpr e = expression();
            expect(")");
            return e;
        }
        if (t.kind != Token::Ident) fail("expected an expression");
        Token id = next();
        std::string name = id.text;
        int primes = 0;
        while (!name.empty() && name.back() == '\'') {
            name.pop_back();
            ++primes;
        }
        if (!peek_symbol("(")) {
            if (primes > 0) throw ParseError("derivative mark on a non-function", id.line, id.column);
            if (name == "x") return Frac::variable(var_x());
            if (name == "y") return Frac::variable(var_y());
            return Frac::variable(param(name));
        }
        next();
        if (name == "exp" || name == "sqrt") {
            ParsedExpr arg = expression();
            expect(")");
            if (name == "sqrt") return as_darboux(arg).pow(Frac(make_rat(1, 2)));
            const Frac* f = std::get_if<Frac>(&arg);
            if (!f) throw ParseError("exp of a non-rational argument", id.line, id.column);
            DarbouxExpr d;
            d.times_exp(*f);
            return d;
        }
        if (name == "expint") {
            Frac rx, ry;
            for (int k = 0; k < 2; ++k) {
                if (k == 1) expect(",");
                const Token& key = peek();
                if (key.kind != Token::Ident || (key.text != "dx" && key.text != "dy")) fail("expected dx or dy");
                std::string which = next().text;
                expect("=");
                ParsedExpr v = expression();
                const Frac* f = std::get_if<Frac>(&v);
                if (!f) throw ParseError("expint integrand must be rational", key.line, key.column);
                (which == "dx" ? rx : ry) = *f;
            }
            expect(")");
            DarbouxExpr d;
            try {
                d.times_exp_integral(rx, ry);
            } catch (const MathError& e) {
                throw ParseError(e.what(), id.line, id.column);
            }
            return d;
        }
        const Token& arg = peek();
        if (arg.kind != Token::Ident || (arg.text != "x" && arg.text != "y"))
            fail("arbitrary functions take x or y as argument");
        Axis axis = next().text == "x" ? Axis::X : Axis::Y;
        expect(")");
        try {
            return Frac::variable(jet(name, primes, axis));
        } catch (const MathError& e) {
            throw ParseError(e.what(), id.line, id.column);
        }
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

}  // namespace

ParsedExpr parse_expr(std::string_view text) {
    Parser p(Lexer(text).run());
    ParsedExpr e = p.expression();
    if (!p.at_end()) p.fail("unexpected trailing input");
    return e;
}

Frac parse_frac(std::string_view text) {
    ParsedExpr e = parse_expr(text);
    if (const Frac* f = std::get_if<Frac>(&e)) return *f;
    throw ParseError("expected a rational expression", 1, 1);
}

DarbouxExpr parse_darboux(std::string_view text) { return as_darboux(parse_expr(text)); }

PlanarSystem parse_system(std::string_view text) {
    Parser p(Lexer(text).run());
    std::optional<Frac> P, Q;
    while (!p.at_end()) {
        const Token& t = p.peek();
        if (t.kind != Token::Ident || (t.text != "P" && t.text != "Q")) p.fail("expected 'P =' or 'Q ='");
        std::string which = p.next().text;
        p.expect("=");
        const Token& start = p.peek();
        ParsedExpr e = p.expression();
        const Frac* f = std::get_if<Frac>(&e);
        if (!f) throw ParseError("system components must be rational", start.line, start.column);
        (which == "P" ? P : Q) = *f;
        if (p.peek_symbol(";")) p.next();
        else if (!p.at_end()) p.fail("expected ';'");
    }
    if (!P || !Q) throw ParseError("system needs both P and Q", 1, 1);
    return PlanarSystem(*P, *Q);
}

std::string serialize(const PlanarSystem& sys) {
    return "P = " + to_string(sys.P()) + "; Q = " + to_string(sys.Q()) + ";";
}

}  // namespace iif
