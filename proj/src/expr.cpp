#include "noetherlab/expr.hpp"

#include <algorithm>
#include <cassert>

namespace noetherlab {

// ---------------------------------------------------------------------------
// Exponent
// ---------------------------------------------------------------------------

Exponent Exponent::operator*(const Exponent& o) const {
    if (!b.isZero() && !o.b.isZero())
        throw NlError("exponent product would be quadratic in gamma");
    return {a * o.a, a * o.b + b * o.a};
}

GammaRat Exponent::asCoefficient() const {
    return GammaRat(a.toRational()) + GammaRat::gamma() * GammaRat(b.toRational());
}

Exponent Exponent::specialized(const Rational& g) const {
    return {a + b * Frac::fromRational(g), Frac(0)};
}

std::string Exponent::str() const {
    if (b.isZero()) {
        if (a.isInteger()) return std::to_string(a.num());
        return "(" + a.str() + ")";
    }
    if (a.isZero() && b == Frac(1)) return "gamma";
    std::string s = "(";
    bool wrote = false;
    if (!a.isZero()) {
        s += a.str();
        wrote = true;
    }
    if (b == Frac(1))
        s += wrote ? "+gamma" : "gamma";
    else if (b == Frac(-1))
        s += "-gamma";
    else {
        if (wrote && !(b < Frac(0))) s += "+";
        s += b.str() + "*gamma";
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// Monomial / Poly
// ---------------------------------------------------------------------------

bool monoLess(const Monomial& a, const Monomial& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].base != b[i].base) return atomLess(a[i].base, b[i].base);
        if (a[i].exp != b[i].exp) return a[i].exp < b[i].exp;
    }
    return a.size() < b.size();
}

bool monoEqual(const Monomial& a, const Monomial& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

static void normalizeMonomial(Monomial& m) {
    std::sort(m.begin(), m.end(),
              [](const Factor& x, const Factor& y) { return atomLess(x.base, y.base); });
    Monomial out;
    out.reserve(m.size());
    for (auto& f : m) {
        if (!out.empty() && out.back().base == f.base)
            out.back().exp = out.back().exp + f.exp;
        else
            out.push_back(f);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Factor& f) { return f.exp.isZero(); }),
              out.end());
    m = std::move(out);
}

void normalizePoly(std::vector<Term>& ts) {
    for (auto& t : ts) normalizeMonomial(t.mono);
    std::sort(ts.begin(), ts.end(),
              [](const Term& a, const Term& b) { return monoLess(a.mono, b.mono); });
    std::vector<Term> out;
    out.reserve(ts.size());
    for (auto& t : ts) {
        if (t.coef.isZero()) continue;
        if (!out.empty() && monoEqual(out.back().mono, t.mono)) {
            out.back().coef = out.back().coef + t.coef;
            if (out.back().coef.isZero()) out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    ts = std::move(out);
}

Poly polyAdd(const Poly& a, const Poly& b) {
    std::vector<Term> ts;
    ts.reserve(a.terms.size() + b.terms.size());
    ts.insert(ts.end(), a.terms.begin(), a.terms.end());
    ts.insert(ts.end(), b.terms.begin(), b.terms.end());
    normalizePoly(ts);
    return Poly{std::move(ts)};
}

Poly polyNeg(const Poly& a) {
    Poly r = a;
    for (auto& t : r.terms) t.coef = -t.coef;
    return r;
}

Poly polyMul(const Poly& a, const Poly& b) {
    std::vector<Term> ts;
    ts.reserve(a.terms.size() * b.terms.size());
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            Term t;
            t.coef = ta.coef * tb.coef;
            t.mono.reserve(ta.mono.size() + tb.mono.size());
            t.mono.insert(t.mono.end(), ta.mono.begin(), ta.mono.end());
            t.mono.insert(t.mono.end(), tb.mono.begin(), tb.mono.end());
            ts.push_back(std::move(t));
        }
    normalizePoly(ts);
    return Poly{std::move(ts)};
}

Poly polyScale(const Poly& a, const GammaRat& c) {
    if (c.isZero()) return Poly{};
    Poly r = a;
    for (auto& t : r.terms) t.coef = t.coef * c;
    return r;
}

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

static std::string polyStr(const Poly& p);

std::string Condition::str() const {
    if (kind == GammaNonzero) {
        auto roots = gammaPoly.rationalRoots();
        if (gammaPoly.degree() == 1 && roots.size() == 1)
            return "gamma != " + toString(roots[0]);
        return "(" + gammaPoly.str() + ") != 0";
    }
    return polyStr(poly) + " != 0";
}

Conditions mergeConditions(const Conditions& a, const Conditions& b) {
    Conditions out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

static void addCondition(Conditions& cs, Condition c) {
    // drop trivially nonzero assertions (nonzero rationals)
    if (c.kind == Condition::GammaNonzero && c.gammaPoly.degree() < 1) return;
    if (c.kind == Condition::ExprNonzero) {
        if (c.poly.terms.size() == 1 && c.poly.terms[0].mono.empty() &&
            c.poly.terms[0].coef.isRationalConst())
            return;
        // pure-coefficient polynomial: record as a gamma condition instead
        if (c.poly.terms.size() == 1 && c.poly.terms[0].mono.empty()) {
            GammaRat co = c.poly.terms[0].coef;
            Condition g{Condition::GammaNonzero, co.num().primitive(), Poly{}};
            addCondition(cs, std::move(g));
            return;
        }
        // single monomial: each base is asserted nonzero separately for
        // readability
        if (c.poly.terms.size() == 1 && !c.poly.terms[0].mono.empty()) {
            GammaRat co = c.poly.terms[0].coef;
            addCondition(cs, Condition{Condition::GammaNonzero, co.num().primitive(), Poly{}});
            for (const auto& f : c.poly.terms[0].mono) {
                Poly p;
                p.terms.push_back(Term{GammaRat(1), Monomial{Factor{f.base, Exponent(1)}}});
                cs.push_back(Condition{Condition::ExprNonzero, GammaPoly(), std::move(p)});
            }
            std::sort(cs.begin(), cs.end());
            cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
            return;
        }
    }
    cs.push_back(std::move(c));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
}

// ---------------------------------------------------------------------------
// Expr basics
// ---------------------------------------------------------------------------

const Poly& Expr::onePoly() {
    static const Poly p = [] {
        Poly q;
        q.terms.push_back(Term{GammaRat(1), Monomial{}});
        return q;
    }();
    return p;
}

bool Expr::denIsOne() const {
    return den_.terms.size() == 1 && den_.terms[0].mono.empty() &&
           den_.terms[0].coef.isOne();
}

Expr Expr::fromRational(const Rational& r) { return fromCoefficient(GammaRat(r)); }

Expr Expr::fromCoefficient(const GammaRat& c) {
    Expr e;
    if (!c.isZero()) e.num_.terms.push_back(Term{c, Monomial{}});
    return e;
}

Expr Expr::atom(const Atom& a) { return atomPow(a, Exponent(1)); }

Expr Expr::atomPow(const Atom& a, const Exponent& e) {
    Expr r;
    if (e.isZero()) return one();
    r.num_.terms.push_back(Term{GammaRat(1), Monomial{Factor{a, e}}});
    return r;
}

Expr Expr::fromPoly(Poly p) {
    Expr e;
    e.num_ = std::move(p);
    normalizePoly(e.num_.terms);
    return e;
}

Expr Expr::fraction(Poly num, Poly den, Conditions conds) {
    Expr e;
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    e.conds_ = std::move(conds);
    normalizePoly(e.num_.terms);
    normalizePoly(e.den_.terms);
    if (e.den_.isZero()) throw NlError("zero denominator");
    e.reduceDen();
    return e;
}

Expr Expr::withConditions(Conditions extra) const {
    Expr e = *this;
    e.conds_ = mergeConditions(e.conds_, extra);
    return e;
}

Expr Expr::withoutConditions() const {
    Expr e = *this;
    e.conds_.clear();
    return e;
}

/// Fold single-term denominators into the numerator (negative exponents);
/// otherwise normalize the leading coefficient of the denominator to 1.
void Expr::reduceDen() {
    if (num_.isZero()) {
        den_ = onePoly();
        return;
    }
    if (den_.terms.size() == 1) {
        const Term& d = den_.terms[0];
        GammaRat ic = d.coef.inverse();
        Monomial inv;
        inv.reserve(d.mono.size());
        for (const auto& f : d.mono) inv.push_back(Factor{f.base, -f.exp});
        for (auto& t : num_.terms) {
            t.coef = t.coef * ic;
            t.mono.insert(t.mono.end(), inv.begin(), inv.end());
        }
        normalizePoly(num_.terms);
        den_ = onePoly();
        return;
    }
    GammaRat lead = den_.terms[0].coef;
    if (!lead.isOne()) {
        GammaRat inv = lead.inverse();
        for (auto& t : num_.terms) t.coef = t.coef * inv;
        for (auto& t : den_.terms) t.coef = t.coef * inv;
    }
}

Expr Expr::operator+(const Expr& o) const {
    Expr r;
    if (denIsOne() && o.denIsOne()) {
        r.num_ = polyAdd(num_, o.num_);
        r.den_ = onePoly();
    } else {
        r.num_ = polyAdd(polyMul(num_, o.den_), polyMul(o.num_, den_));
        r.den_ = polyMul(den_, o.den_);
        r.reduceDen();
    }
    r.conds_ = mergeConditions(conds_, o.conds_);
    return r;
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator-() const {
    Expr r = *this;
    r.num_ = polyNeg(r.num_);
    return r;
}

Expr Expr::operator*(const Expr& o) const {
    Expr r;
    r.num_ = polyMul(num_, o.num_);
    if (denIsOne() && o.denIsOne())
        r.den_ = onePoly();
    else {
        r.den_ = polyMul(den_, o.den_);
    }
    r.conds_ = mergeConditions(conds_, o.conds_);
    r.reduceDen();
    return r;
}

Expr Expr::operator/(const Expr& o) const {
    if (o.num_.isZero()) throw NlError("division by zero expression");
    Expr r;
    r.num_ = polyMul(num_, o.den_);
    r.den_ = polyMul(den_, o.num_);
    r.conds_ = mergeConditions(conds_, o.conds_);
    addCondition(r.conds_, Condition{Condition::ExprNonzero, GammaPoly(), o.num_});
    r.reduceDen();
    return r;
}

Expr Expr::powInt(long long k) const {
    if (k == 0) return one().withConditions(conds_);
    Expr base = *this;
    bool invert = k < 0;
    unsigned long long n = invert ? -(unsigned long long)k : (unsigned long long)k;
    Expr acc = one();
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    if (invert) return one().withConditions(conds_) / acc;
    return acc;
}

Expr Expr::powExp(const Exponent& e) const {
    if (e.isZero()) return one().withConditions(conds_);
    if (e.isInteger()) return powInt(e.a.num());
    if (!denIsOne() || num_.terms.size() != 1)
        throw NlError("non-integer power of a multi-term expression is not representable");
    const Term& t = num_.terms[0];
    if (!t.coef.isOne())
        throw NlError("non-integer power of a term with coefficient " + t.coef.str() +
                      " is not representable");
    Term r;
    r.coef = GammaRat(1);
    for (const auto& f : t.mono) r.mono.push_back(Factor{f.base, f.exp * e});
    Poly p;
    p.terms.push_back(std::move(r));
    Expr out = fromPoly(std::move(p));
    out.conds_ = conds_;
    return out;
}

Expr Expr::canonicalized() const {
    Expr e = *this;
    normalizePoly(e.num_.terms);
    normalizePoly(e.den_.terms);
    e.reduceDen();
    return e;
}

bool Expr::identicalTo(const Expr& o) const {
    auto polyEq = [](const Poly& a, const Poly& b) {
        if (a.terms.size() != b.terms.size()) return false;
        for (std::size_t i = 0; i < a.terms.size(); ++i)
            if (!(a.terms[i].coef == b.terms[i].coef) ||
                !monoEqual(a.terms[i].mono, b.terms[i].mono))
                return false;
        return true;
    };
    return polyEq(num_, o.num_) && polyEq(den_, o.den_);
}

bool Expr::containsSym(uint16_t sym) const {
    for (const auto& t : num_.terms)
        for (const auto& f : t.mono)
            if (f.base.sym == sym) return true;
    for (const auto& t : den_.terms)
        for (const auto& f : t.mono)
            if (f.base.sym == sym) return true;
    return false;
}

void Expr::collectAtoms(std::set<Atom, bool (*)(const Atom&, const Atom&)>& out) const {
    for (const Poly* p : {&num_, &den_})
        for (const auto& t : p->terms)
            for (const auto& f : t.mono) out.insert(f.base);
}

std::vector<Atom> Expr::atoms() const {
    std::set<Atom, bool (*)(const Atom&, const Atom&)> s(&atomLess);
    collectAtoms(s);
    return std::vector<Atom>(s.begin(), s.end());
}

int Expr::maxJetOrder(uint16_t dep) const {
    int m = -1;
    for (const Poly* p : {&num_, &den_})
        for (const auto& t : p->terms)
            for (const auto& f : t.mono) {
                if (f.base.sym == dep) m = std::max(m, indexOrder(f.base.idx));
                if (f.base.sym == SYM_J && (dep == SYM_PHI1 || dep == SYM_PHI2))
                    m = std::max(m, 1);
            }
    return m;
}

std::optional<Frame> Expr::frame() const {
    std::optional<Frame> f;
    for (const Atom& a : atoms()) {
        auto sf = symbolFrame(a.sym);
        if (!sf) continue;
        if (f && *f != *sf) throw NlError("expression mixes Lagrangian and Eulerian atoms");
        f = sf;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Zero test with protected-base elimination
// ---------------------------------------------------------------------------

Expr eliminateProtected(const Expr& e) {
    bool hasJ = e.containsSym(SYM_J);
    Atom p2e = makeAtom(SYM_PHI2, {Label::Eta});
    bool hasP2e = false;
    for (const Atom& a : e.atoms())
        if (a == p2e) hasP2e = true;
    // with either base absent the monomial keys are already independent
    if (!hasJ || !hasP2e) return e;
    Poly rnum;
    rnum.terms.push_back(Term{GammaRat(1), Monomial{Factor{makeAtom(SYM_J), Exponent(1)}}});
    rnum.terms.push_back(
        Term{GammaRat(1), Monomial{Factor{makeAtom(SYM_PHI1, {Label::Eta}), Exponent(1)},
                                   Factor{makeAtom(SYM_PHI2, {Label::Xi}), Exponent(1)}}});
    Poly rden;
    rden.terms.push_back(
        Term{GammaRat(1), Monomial{Factor{makeAtom(SYM_PHI1, {Label::Xi}), Exponent(1)}}});
    Expr rhs = Expr::fraction(std::move(rnum), std::move(rden), {});
    Expr out = substitute(e, {{p2e, rhs}});
    return out.withoutConditions().withConditions(e.conditions());
}

bool Expr::isZero() const {
    if (num_.isZero()) return true;
    if (!containsSym(SYM_J)) return false;
    Expr res = eliminateProtected(fromPoly(num_));
    return res.num().isZero();
}

bool canonicalEq(const Expr& a, const Expr& b) {
    Expr d;
    if (a.denIsOne() && b.denIsOne())
        d = a - b;
    else
        d = Expr::fromPoly(polyAdd(polyMul(a.num(), b.den()), polyNeg(polyMul(b.num(), a.den()))));
    return d.isZero();
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

struct RuleMap {
    std::vector<std::pair<Atom, Expr>> rules;
    const Expr* find(const Atom& a) const {
        for (const auto& r : rules)
            if (r.first == a) return &r.second;
        return nullptr;
    }
};

void checkAcyclic(const RuleMap& m) {
    // depth-first search over lhs -> atoms(rhs) edges
    enum State { White, Grey, Black };
    std::vector<State> state(m.rules.size(), White);
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
        state[i] = Grey;
        for (const Atom& a : m.rules[i].second.atoms()) {
            for (std::size_t j = 0; j < m.rules.size(); ++j) {
                if (!(m.rules[j].first == a)) continue;
                if (state[j] == Grey) throw NlError("cyclic substitution rule set");
                if (state[j] == White) visit(j);
            }
        }
        state[i] = Black;
    };
    for (std::size_t i = 0; i < m.rules.size(); ++i)
        if (state[i] == White) visit(i);
}

Expr substitutePoly(const Poly& p, const RuleMap& rules) {
    Expr sum = Expr::zero();
    for (const auto& t : p.terms) {
        bool touched = false;
        for (const auto& f : t.mono)
            if (rules.find(f.base)) {
                touched = true;
                break;
            }
        if (!touched) {
            Poly q;
            q.terms.push_back(t);
            sum += Expr::fromPoly(std::move(q));
            continue;
        }
        Expr acc = Expr::fromCoefficient(t.coef);
        for (const auto& f : t.mono) {
            if (acc.num().isZero()) break;
            const Expr* rhs = rules.find(f.base);
            if (!rhs) {
                acc *= Expr::atomPow(f.base, f.exp);
                continue;
            }
            if (rhs->num().isZero()) {
                if (f.exp.isPositiveInteger()) {
                    acc = Expr::zero();
                    break;
                }
                throw EvalError("substitution maps " + atomName(f.base) +
                                " to zero under a non-positive-integer power");
            }
            acc *= rhs->powExp(f.exp);
        }
        sum += acc;
    }
    return sum;
}

}  // namespace

Expr substitute(const Expr& e, const std::vector<std::pair<Atom, Expr>>& rules) {
    if (rules.empty()) return e;
    RuleMap m{rules};
    checkAcyclic(m);
    Expr n = substitutePoly(e.num(), m);
    Expr result;
    if (e.denIsOne()) {
        result = n;
    } else {
        Expr d = substitutePoly(e.den(), m);
        result = n / d;
    }
    return result.withConditions(e.conditions());
}

// ---------------------------------------------------------------------------
// Gamma specialization
// ---------------------------------------------------------------------------

Expr specializeGamma(const Expr& e, const Rational& g) {
    Conditions kept;
    for (const auto& c : e.conditions()) {
        if (c.kind == Condition::GammaNonzero) {
            if (c.gammaPoly.evalAt(g) == 0)
                throw ExcludedValueError("gamma = " + toString(g) +
                                         " violates condition " + c.str());
        } else {
            kept.push_back(c);
        }
    }
    auto mapPoly = [&](const Poly& p) {
        Poly r;
        r.terms.reserve(p.terms.size());
        for (const auto& t : p.terms) {
            Term nt;
            nt.coef = GammaRat(t.coef.evalAt(g));
            nt.mono.reserve(t.mono.size());
            for (const auto& f : t.mono) nt.mono.push_back(Factor{f.base, f.exp.specialized(g)});
            r.terms.push_back(std::move(nt));
        }
        return r;
    };
    return Expr::fraction(mapPoly(e.num()), mapPoly(e.den()), std::move(kept));
}

// ---------------------------------------------------------------------------
// Coordinate partials (sees through J)
// ---------------------------------------------------------------------------

namespace {

/// dJ/da for the four first-order jets J is built from; zero otherwise.
Expr detPartial(const Atom& a) {
    auto j = [](uint16_t s, Label l) { return makeAtom(s, {l}); };
    if (a == j(SYM_PHI1, Label::Xi)) return Expr::atom(j(SYM_PHI2, Label::Eta));
    if (a == j(SYM_PHI2, Label::Eta)) return Expr::atom(j(SYM_PHI1, Label::Xi));
    if (a == j(SYM_PHI1, Label::Eta)) return -Expr::atom(j(SYM_PHI2, Label::Xi));
    if (a == j(SYM_PHI2, Label::Xi)) return -Expr::atom(j(SYM_PHI1, Label::Eta));
    return Expr::zero();
}

Expr polyPartialAtom(const Poly& p, const Atom& a) {
    Expr dJ = detPartial(a);
    Expr sum = Expr::zero();
    for (const auto& t : p.terms) {
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            const Factor& f = t.mono[i];
            Expr dbase;
            if (f.base == a)
                dbase = Expr::one();
            else if (f.base.sym == SYM_J && !dJ.num().isZero())
                dbase = dJ;
            else
                continue;
            Term rest;
            rest.coef = t.coef * f.exp.asCoefficient();
            for (std::size_t k = 0; k < t.mono.size(); ++k) {
                if (k == i) {
                    Exponent e1 = f.exp - Exponent(1);
                    if (!e1.isZero()) rest.mono.push_back(Factor{f.base, e1});
                } else {
                    rest.mono.push_back(t.mono[k]);
                }
            }
            Poly q;
            q.terms.push_back(std::move(rest));
            sum += Expr::fromPoly(std::move(q)) * dbase;
        }
    }
    return sum;
}

}  // namespace

Expr partialAtom(const Expr& e, const Atom& a) {
    Expr dn = polyPartialAtom(e.num(), a);
    if (e.denIsOne()) return dn.withConditions(e.conditions());
    Expr dd = polyPartialAtom(e.den(), a);
    Expr den = Expr::fromPoly(e.den());
    Expr r = (dn * den - Expr::fromPoly(e.num()) * dd) / (den * den);
    return r.withConditions(e.conditions());
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

static std::string termStr(const Term& t, bool leading) {
    std::string coefPart;
    bool neg = false;
    const GammaRat& c = t.coef;
    std::string body;
    GammaRat cc = c;
    if (c.isRationalConst()) {
        Rational r = c.asRational();
        if (r < 0) {
            neg = true;
            cc = GammaRat(Rational(-r));
        }
    }
    bool coefIsOne = cc.isOne();
    if (cc.isRationalConst()) {
        if (!coefIsOne || t.mono.empty()) coefPart = toString(cc.asRational());
    } else {
        std::string n = cc.num().str();
        coefPart = (cc.num().degree() > 0) ? "(" + n + ")" : n;
        if (cc.den().degree() > 0) coefPart += "/(" + cc.den().str() + ")";
    }
    std::vector<std::string> parts;
    if (!coefPart.empty() && !(coefIsOne && !t.mono.empty())) parts.push_back(coefPart);
    for (const auto& f : t.mono) {
        std::string s = atomName(f.base);
        if (!(f.exp == Exponent(1))) s += "^" + f.exp.str();
        parts.push_back(s);
    }
    if (parts.empty()) parts.push_back("1");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) body += "*";
        body += parts[i];
    }
    if (leading) return (neg ? "-" : "") + body;
    return (neg ? " - " : " + ") + body;
}

static std::string polyStr(const Poly& p) {
    if (p.isZero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.terms.size(); ++i) out += termStr(p.terms[i], i == 0);
    return out;
}

std::string Expr::str() const {
    if (denIsOne()) return polyStr(num_);
    return "(" + polyStr(num_) + ")/(" + polyStr(den_) + ")";
}

std::string Expr::leadingTermStr() const {
    if (num_.isZero()) return "0";
    return termStr(num_.terms[0], true);
}

}  // namespace noetherlab
