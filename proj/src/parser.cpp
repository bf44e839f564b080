#include "noetherlab/parser.hpp"

#include <cctype>

namespace noetherlab {

namespace {

class Parser {
public:
    Parser(const std::string& text, Frame frame, EntropyMode mode)
        : s_(text), frame_(frame), mode_(mode) {}

    Expr run() {
        Expr e = parseExpr();
        skipWs();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    Frame frame_;
    EntropyMode mode_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
    }

    void skipWs() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skipWs();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parseExpr() {
        Expr e = parseTerm();
        for (;;) {
            if (accept('+'))
                e += parseTerm();
            else if (accept('-'))
                e -= parseTerm();
            else
                return e;
        }
    }

    Expr parseTerm() {
        Expr e = parseUnary();
        for (;;) {
            if (accept('*'))
                e *= parseUnary();
            else if (accept('/'))
                e = e / parseUnary();
            else
                return e;
        }
    }

    Expr parseUnary() {
        if (accept('-')) return -parseUnary();
        return parsePower();
    }

    Expr parsePower() {
        Expr base = parsePrimary();
        if (!accept('^')) return base;
        Exponent e = parseExponent();
        return base.powExp(e);
    }

    Exponent parseExponent() {
        bool neg = accept('-');
        Expr v;
        skipWs();
        if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                 std::isalpha(static_cast<unsigned char>(s_[pos_])) ||
                                 s_[pos_] == '(')) {
            v = parsePrimary();
        } else {
            fail("expected exponent");
        }
        Exponent e = toExponent(v);
        return neg ? -e : e;
    }

    Exponent toExponent(const Expr& v) {
        if (!v.denIsOne() || v.termCount() > 1 || !v.atoms().empty()) {
            if (v.termCount() == 0) return Exponent(0);
            fail("exponent must be affine in gamma with rational coefficients");
        }
        if (v.num().terms.empty()) return Exponent(0);
        const GammaRat& c = v.num().terms[0].coef;
        if (!v.num().terms[0].mono.empty()) fail("exponent must not contain atoms");
        if (c.den().degree() > 0) fail("exponent must be polynomial in gamma");
        GammaPoly p = c.num().scaled(Rational(1) / c.den().coeff(0));
        if (p.degree() > 1) fail("exponent must be affine in gamma");
        return Exponent(Frac::fromRational(p.coeff(0)), Frac::fromRational(p.coeff(1)));
    }

    Expr parsePrimary() {
        skipWs();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parseExpr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parseInteger();
        if (std::isalpha(static_cast<unsigned char>(c))) return parseName();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    Expr parseInteger() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Expr::fromRational(Rational(BigInt(s_.substr(start, pos_ - start))));
    }

    Expr parseName() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])))) ++pos_;
        std::string root = s_.substr(start, pos_ - start);
        if (root == "gamma") return Expr::gamma();
        while (pos_ < s_.size() && s_[pos_] == '\'') {
            root += '\'';
            ++pos_;
        }
        auto sym = Registry::get().resolve(root, frame_, mode_);
        if (!sym) {
            pos_ = start;
            fail("unknown atom name '" + root + "'");
        }
        MultiIndex idx = emptyIndex();
        if (pos_ < s_.size() && s_[pos_] == '_') {
            ++pos_;
            parseIndices(idx, *sym);
        }
        return Expr::atom(makeAtom(*sym, idx));
    }

    void parseIndices(MultiIndex& idx, uint16_t sym) {
        const SymbolInfo& info = Registry::get().info(sym);
        if (info.kind != SymbolKind::Dependent && info.kind != SymbolKind::Func)
            fail("symbol '" + info.name + "' does not take derivative indices");
        std::size_t start = pos_;
        bool any = false;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
            Label l;
            // greedy longest-match over the frame's label names
            if (s_.compare(pos_, 3, "eta") == 0 && frame_ == Frame::Lagrangian) {
                l = Label::Eta;
                pos_ += 3;
            } else if (s_.compare(pos_, 2, "xi") == 0 && frame_ == Frame::Lagrangian) {
                l = Label::Xi;
                pos_ += 2;
            } else if (s_[pos_] == 't') {
                l = Label::T;
                pos_ += 1;
            } else if (s_[pos_] == 'x' && frame_ == Frame::Eulerian) {
                l = Label::X;
                pos_ += 1;
            } else if (s_[pos_] == 'y' && frame_ == Frame::Eulerian) {
                l = Label::Y;
                pos_ += 1;
            } else {
                break;
            }
            if (!Registry::get().dependsOn(sym, l)) {
                pos_ = start;
                fail("malformed multi-index: '" + info.name + "' does not depend on that label");
            }
            idx[static_cast<int>(l)]++;
            any = true;
        }
        if (!any) fail("empty derivative index");
    }
};

}  // namespace

Expr parse(const std::string& text, Frame frame, EntropyMode mode) {
    return Parser(text, frame, mode).run();
}

}  // namespace noetherlab
