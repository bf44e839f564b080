/// @file expr.hpp
/// @brief Canonical symbolic expressions over jet atoms with exponents that
///        are affine in gamma.
///
/// An Expr is a quotient num/den of two canonical polynomials. Each
/// polynomial is a sorted sum of terms; each term is a Q(gamma) coefficient
/// times a product of factors base^(a + b*gamma) with rational a, b. The
/// denominator is almost always 1: dividing by a single-term expression folds
/// into negative exponents, so true multi-term denominators only arise from
/// explicit division by sums.
///
/// Zero is the empty sum, and equality is decidable: collection handles the
/// free part, and the protected base J is eliminated through the birational
/// change phi2_eta -> (J + phi1_eta*phi2_xi)/phi1_xi, after which all bases
/// are algebraically independent.
///
/// Side conditions accumulated by divisions (gamma != 1, S_xi != 0, ...) ride
/// along in a condition ledger; they are reported, never silently assumed.

#ifndef NOETHERLAB_EXPR_HPP
#define NOETHERLAB_EXPR_HPP

#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "noetherlab/rational.hpp"
#include "noetherlab/symbols.hpp"

namespace noetherlab {

/// Exponent a + b*gamma.
struct Exponent {
    Frac a, b;

    Exponent() = default;
    Exponent(long long n) : a(n), b(0) {}
    Exponent(Frac a_, Frac b_) : a(a_), b(b_) {}

    bool isZero() const { return a.isZero() && b.isZero(); }
    bool isInteger() const { return b.isZero() && a.isInteger(); }
    bool isPositiveInteger() const { return isInteger() && a.num() > 0; }
    Exponent operator+(const Exponent& o) const { return {a + o.a, b + o.b}; }
    Exponent operator-(const Exponent& o) const { return {a - o.a, b - o.b}; }
    Exponent operator-() const { return {-a, -b}; }
    /// Product of affine exponents; throws when a gamma^2 term would appear.
    Exponent operator*(const Exponent& o) const;
    bool operator==(const Exponent& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Exponent& o) const { return !(*this == o); }
    bool operator<(const Exponent& o) const { return a < o.a || (a == o.a && b < o.b); }

    GammaRat asCoefficient() const;  // a + b*gamma as an element of Q(gamma)
    Exponent specialized(const Rational& g) const;
    double evalAt(double g) const { return a.toDouble() + b.toDouble() * g; }
    std::string str() const;
};

struct Factor {
    Atom base;
    Exponent exp;
    bool operator==(const Factor& o) const { return base == o.base && exp == o.exp; }
};

/// Sorted product of factors, no repeated bases, no zero exponents.
using Monomial = std::vector<Factor>;

struct Term {
    GammaRat coef;
    Monomial mono;
};

/// Canonical polynomial: terms sorted by monomial, nonzero coefficients.
struct Poly {
    std::vector<Term> terms;
    bool isZero() const { return terms.empty(); }
};

bool monoLess(const Monomial& a, const Monomial& b);
bool monoEqual(const Monomial& a, const Monomial& b);
void normalizePoly(std::vector<Term>& ts);
Poly polyAdd(const Poly& a, const Poly& b);
Poly polyNeg(const Poly& a);
Poly polyMul(const Poly& a, const Poly& b);
Poly polyScale(const Poly& a, const GammaRat& c);

/// A nonvanishing assertion attached to results.
struct Condition {
    enum Kind { GammaNonzero, ExprNonzero } kind;
    GammaPoly gammaPoly;  // GammaNonzero
    Poly poly;            // ExprNonzero

    std::string str() const;
    bool operator<(const Condition& o) const { return str() < o.str(); }
    bool operator==(const Condition& o) const { return str() == o.str(); }
};

using Conditions = std::vector<Condition>;  // sorted, unique
Conditions mergeConditions(const Conditions& a, const Conditions& b);

class Expr {
public:
    Expr() : den_(onePoly()) {}  // zero

    static Expr zero() { return Expr(); }
    static Expr one() { return fromRational(Rational(1)); }
    static Expr fromRational(const Rational& r);
    static Expr fromCoefficient(const GammaRat& c);
    static Expr gamma() { return fromCoefficient(GammaRat::gamma()); }
    static Expr atom(const Atom& a);
    static Expr atomPow(const Atom& a, const Exponent& e);
    static Expr fromPoly(Poly p);
    static Expr fraction(Poly num, Poly den, Conditions conds);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool denIsOne() const;
    const Conditions& conditions() const { return conds_; }
    Expr withConditions(Conditions extra) const;
    Expr withoutConditions() const;

    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator-() const;
    Expr operator*(const Expr& o) const;
    /// Division records the divisor's numerator in the condition ledger.
    Expr operator/(const Expr& o) const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    Expr powInt(long long k) const;
    /// Raise to a + b*gamma; requires a single-term operand with coefficient 1
    /// unless the exponent is an integer.
    Expr powExp(const Exponent& e) const;

    /// Decides whether the expression is identically zero (protected-base
    /// elimination included).  Deterministic and exact.
    bool isZero() const;

    /// Structural equality of the canonical representation.
    bool identicalTo(const Expr& o) const;

    /// Re-canonicalize (idempotent; the representation is kept canonical by
    /// construction, this re-sorts and re-merges defensively).
    Expr canonicalized() const;

    std::string str() const;

    bool containsSym(uint16_t sym) const;
    void collectAtoms(std::set<Atom, bool (*)(const Atom&, const Atom&)>& out) const;
    std::vector<Atom> atoms() const;
    /// Highest jet order among the given dependent's atoms (J counts as
    /// first-order phi jets).
    int maxJetOrder(uint16_t dep) const;
    /// Frame inferred from atoms; nullopt when frame-agnostic.
    std::optional<Frame> frame() const;

    /// Leading term as text, for residual witnesses.
    std::string leadingTermStr() const;
    std::size_t termCount() const { return num_.terms.size(); }

private:
    Poly num_, den_;
    Conditions conds_;

    static const Poly& onePoly();
    void reduceDen();
    friend Expr substitute(const Expr&, const std::vector<std::pair<Atom, Expr>>&);
};

/// Semantic equality under the declared side conditions:
/// canonicalize(a - b) is the zero representation.
bool canonicalEq(const Expr& a, const Expr& b);

/// Simultaneous substitution of atoms (or the protected base J) by
/// expressions, then canonicalization. Rules must be acyclic.
Expr substitute(const Expr& e, const std::vector<std::pair<Atom, Expr>>& rules);

/// Specialize gamma to an exact rational; coefficients and exponents collapse.
/// Conditions mentioning gamma are checked and discharged.
Expr specializeGamma(const Expr& e, const Rational& g);

/// Coordinate partial derivative with respect to an atom. Sees through the
/// protected base J: d(J)/d(phi1_xi) = phi2_eta etc.
Expr partialAtom(const Expr& e, const Atom& a);

/// Rewrites phi2_eta through the protected base (the birational change the
/// zero test uses), leaving algebraically independent bases. Required before
/// splitting an expression into per-monomial coefficient conditions.
Expr eliminateProtected(const Expr& e);

}  // namespace noetherlab

#endif
