#include "noetherlab/eval.hpp"

#include <cmath>

namespace noetherlab {

namespace {

double atomValue(const Atom& a, const Assignment& asg) {
    if (a.sym == SYM_J && indexOrder(a.idx) == 0) {
        auto get = [&](uint16_t s, Label l) {
            auto it = asg.find(makeAtom(s, {l}));
            if (it == asg.end())
                throw EvalError("missing phi jet needed to evaluate J");
            return it->second;
        };
        return get(SYM_PHI1, Label::Xi) * get(SYM_PHI2, Label::Eta) -
               get(SYM_PHI1, Label::Eta) * get(SYM_PHI2, Label::Xi);
    }
    auto it = asg.find(a);
    if (it == asg.end()) throw EvalError("missing atom in assignment: " + atomName(a));
    return it->second;
}

double powExp(double base, const Exponent& e, double gamma, const Atom& a) {
    if (e.isInteger()) {
        long long k = e.a.num();
        if (base == 0.0 && k <= 0) throw EvalError("division by zero at " + atomName(a));
        double r = 1.0, b = base;
        unsigned long long n = k < 0 ? -(unsigned long long)k : (unsigned long long)k;
        while (n) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return k < 0 ? 1.0 / r : r;
    }
    double x = e.evalAt(gamma);
    if (base <= 0.0)
        throw EvalError("non-integer power of non-positive base at " + atomName(a));
    return std::pow(base, x);
}

double polyEval(const Poly& p, const Assignment& asg, double gamma, double& scale) {
    double sum = 0.0;
    for (const auto& t : p.terms) {
        double v = t.coef.evalAt(gamma);
        for (const auto& f : t.mono) v *= powExp(atomValue(f.base, asg), f.exp, gamma, f.base);
        if (!std::isfinite(v)) throw EvalError("non-finite value in evaluation");
        sum += v;
        scale = std::max(scale, std::fabs(v));
    }
    return sum;
}

}  // namespace

EvalResult evalNumeric(const Expr& e, const Assignment& a, double gamma) {
    for (const auto& c : e.conditions()) {
        if (c.kind == Condition::GammaNonzero) {
            if (std::fabs(c.gammaPoly.evalAt(gamma)) < 1e-12)
                throw ExcludedValueError("gamma hits a ledger-excluded value: " + c.str());
        } else {
            double s = 0.0;
            if (std::fabs(polyEval(c.poly, a, gamma, s)) < 1e-12)
                throw ExcludedValueError("assignment violates condition " + c.str());
        }
    }
    EvalResult r;
    double nscale = 0.0;
    double n = polyEval(e.num(), a, gamma, nscale);
    if (e.denIsOne()) {
        r.value = n;
        r.scale = nscale;
        return r;
    }
    double dscale = 0.0;
    double d = polyEval(e.den(), a, gamma, dscale);
    if (d == 0.0) throw EvalError("denominator evaluates to zero");
    r.value = n / d;
    r.scale = nscale / std::fabs(d);
    return r;
}

}  // namespace noetherlab
