#include "noetherlab/jet.hpp"

#include <algorithm>

namespace noetherlab {

// ---------------------------------------------------------------------------
// JetFrame
// ---------------------------------------------------------------------------

JetFrame JetFrame::lagrangian() { return JetFrame{Frame::Lagrangian, {SYM_PHI1, SYM_PHI2}}; }

JetFrame JetFrame::lagrangianEquivalence() {
    return JetFrame{Frame::Lagrangian, {SYM_PHI1, SYM_PHI2, SYM_S}};
}

JetFrame JetFrame::eulerian() {
    return JetFrame{Frame::Eulerian, {SYM_RHO, SYM_U, SYM_V, SYM_SE}};
}

bool JetFrame::isDependent(uint16_t sym) const {
    return std::find(dependents.begin(), dependents.end(), sym) != dependents.end();
}

std::vector<Label> JetFrame::dependentLabels(uint16_t dep) const {
    std::vector<Label> ls;
    for (Label l : frameLabels(frame))
        if (Registry::get().dependsOn(dep, l)) ls.push_back(l);
    return ls;
}

// ---------------------------------------------------------------------------
// Total derivative
// ---------------------------------------------------------------------------

namespace {

void checkLabelFrame(const Expr& e, Label l) {
    auto f = e.frame();
    if (!f) return;
    bool ok = false;
    for (Label fl : frameLabels(*f))
        if (fl == l) ok = true;
    if (!ok) throw NlError("label not in the expression's frame");
}

/// D_l of J, expanded through the determinant.
Expr detDerivative(Label l) {
    auto jet = [](uint16_t s, std::initializer_list<Label> d) {
        return Expr::atom(makeAtom(s, d));
    };
    auto d1 = [l](uint16_t s, Label a) {
        MultiIndex m = emptyIndex();
        m[static_cast<int>(a)]++;
        m[static_cast<int>(l)]++;
        return Expr::atom(makeAtom(s, m));
    };
    return d1(SYM_PHI1, Label::Xi) * jet(SYM_PHI2, {Label::Eta}) +
           jet(SYM_PHI1, {Label::Xi}) * d1(SYM_PHI2, Label::Eta) -
           d1(SYM_PHI1, Label::Eta) * jet(SYM_PHI2, {Label::Xi}) -
           jet(SYM_PHI1, {Label::Eta}) * d1(SYM_PHI2, Label::Xi);
}

/// Derivative of a single base atom; `frozenDeps` freezes dependents (and J)
/// for the explicit-partial variant.
Expr baseDerivative(const Atom& a, Label l, const JetFrame* frozen) {
    const SymbolInfo& info = Registry::get().info(a.sym);
    switch (info.kind) {
        case SymbolKind::Label:
            return a.sym == static_cast<uint16_t>([&] {
                       switch (l) {
                           case Label::T: return SYM_T;
                           case Label::Xi: return SYM_XI;
                           case Label::Eta: return SYM_ETA;
                           case Label::X: return SYM_X;
                           case Label::Y: return SYM_Y;
                       }
                       return SYM_T;
                   }())
                       ? Expr::one()
                       : Expr::zero();
        case SymbolKind::Param:
            return Expr::zero();
        case SymbolKind::Dependent:
            if (frozen && frozen->isDependent(a.sym)) return Expr::zero();
            if (!Registry::get().dependsOn(a.sym, l)) return Expr::zero();
            return Expr::atom(makeAtom(a.sym, indexPlus(a.idx, l)));
        case SymbolKind::Func:
            if (frozen && frozen->isDependent(a.sym)) return Expr::zero();
            if (!Registry::get().dependsOn(a.sym, l)) return Expr::zero();
            return Expr::atom(makeAtom(a.sym, indexPlus(a.idx, l)));
        case SymbolKind::FuncChain: {
            uint16_t arg = info.chainArg;
            if (frozen && frozen->isDependent(arg)) return Expr::zero();
            if (!Registry::get().dependsOn(arg, l)) return Expr::zero();
            if (info.chainNext == SYM_COUNT)
                throw NlError("derivative order of " + info.name + " exceeds the registry chain");
            return Expr::atom(makeAtom(info.chainNext)) * Expr::atom(makeAtom(arg, {l}));
        }
        case SymbolKind::Protected:
            if (frozen) return Expr::zero();
            return detDerivative(l);
    }
    return Expr::zero();
}

Expr polyDerive(const Poly& p, Label l, const JetFrame* frozen) {
    Expr sum = Expr::zero();
    for (const auto& t : p.terms) {
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            const Factor& f = t.mono[i];
            Expr db = baseDerivative(f.base, l, frozen);
            if (db.num().isZero()) continue;
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
            sum += Expr::fromPoly(std::move(q)) * db;
        }
    }
    return sum;
}

Expr derive(const Expr& e, Label l, const JetFrame* frozen) {
    Expr dn = polyDerive(e.num(), l, frozen);
    if (e.denIsOne()) return dn.withConditions(e.conditions());
    Expr dd = polyDerive(e.den(), l, frozen);
    Expr den = Expr::fromPoly(e.den());
    return ((dn * den - Expr::fromPoly(e.num()) * dd) / (den * den))
        .withConditions(e.conditions());
}

}  // namespace

Expr totalDerivative(const Expr& e, Label l) {
    checkLabelFrame(e, l);
    return derive(e, l, nullptr);
}

Expr totalDerivative(const Expr& e, const MultiIndex& idx) {
    Expr r = e;
    for (int li = 0; li < kNumLabels; ++li)
        for (int k = 0; k < idx[li]; ++k) r = totalDerivative(r, static_cast<Label>(li));
    return r;
}

Expr partialExplicit(const Expr& e, Label l, const JetFrame& fr) {
    checkLabelFrame(e, l);
    return derive(e, l, &fr);
}

// ---------------------------------------------------------------------------
// Variational derivative
// ---------------------------------------------------------------------------

namespace {

void enumerateIndices(const std::vector<Label>& ls, int maxOrder,
                      std::vector<MultiIndex>& out) {
    out.push_back(emptyIndex());
    std::size_t lo = 0;
    for (int ord = 1; ord <= maxOrder; ++ord) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (Label l : ls) {
                MultiIndex d = indexPlus(out[i], l);
                if (std::find(out.begin() + hi, out.end(), d) == out.end()) out.push_back(d);
            }
        lo = hi;
    }
}

}  // namespace

Expr variationalDerivative(const Expr& e, uint16_t dep, const JetFrame& fr) {
    int maxOrd = e.maxJetOrder(dep);
    if (maxOrd < 0) return Expr::zero();
    std::vector<MultiIndex> idxs;
    enumerateIndices(fr.dependentLabels(dep), maxOrd, idxs);
    Expr sum = Expr::zero();
    for (const auto& d : idxs) {
        Expr p = partialAtom(e, makeAtom(dep, d));
        if (p.num().isZero()) continue;
        Expr term = totalDerivative(p, d);
        if (indexOrder(d) % 2) term = -term;
        sum += term;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Generators, characteristics, prolongation
// ---------------------------------------------------------------------------

Expr Generator::xiOf(Label l) const {
    auto it = xi.find(l);
    return it == xi.end() ? Expr::zero() : it->second;
}

Expr Generator::etaOf(uint16_t dep) const {
    auto it = eta.find(dep);
    return it == eta.end() ? Expr::zero() : it->second;
}

bool Generator::isZero() const {
    for (const auto& [l, e] : xi)
        if (!e.num().isZero()) return false;
    for (const auto& [d, e] : eta)
        if (!e.num().isZero()) return false;
    return true;
}

Generator Generator::operator+(const Generator& o) const {
    Generator r = *this;
    for (const auto& [l, e] : o.xi) {
        auto it = r.xi.find(l);
        if (it == r.xi.end())
            r.xi.emplace(l, e);
        else
            it->second += e;
    }
    for (const auto& [d, e] : o.eta) {
        auto it = r.eta.find(d);
        if (it == r.eta.end())
            r.eta.emplace(d, e);
        else
            it->second += e;
    }
    return r;
}

Generator Generator::scaled(const Expr& c) const {
    Generator r;
    for (const auto& [l, e] : xi) r.xi.emplace(l, c * e);
    for (const auto& [d, e] : eta) r.eta.emplace(d, c * e);
    return r;
}

void Generator::validatePointCoefficients() const {
    auto check = [](const Expr& e) {
        for (const Atom& a : e.atoms()) {
            const auto& info = Registry::get().info(a.sym);
            if (info.kind == SymbolKind::Protected)
                throw NlError("generator coefficient contains the protected base J");
            if (info.kind == SymbolKind::Dependent && indexOrder(a.idx) >= 1)
                throw NlError("generator coefficient contains the jet atom " + atomName(a));
        }
    };
    for (const auto& [l, e] : xi) check(e);
    for (const auto& [d, e] : eta) check(e);
}

Expr characteristic(const Generator& X, uint16_t dep, const JetFrame& fr) {
    Expr w = X.etaOf(dep);
    for (Label l : fr.dependentLabels(dep))
        w -= X.xiOf(l) * Expr::atom(makeAtom(dep, {l}));
    return w;
}

std::map<Atom, Expr, AtomCmp> prolong(const Generator& X, const JetFrame& fr, int order) {
    if (order < 1 || order > 2) throw NlError("prolongation supports orders 1 and 2 only");
    std::map<Atom, Expr, AtomCmp> table;
    for (uint16_t dep : fr.dependents) {
        Expr w = characteristic(X, dep, fr);
        std::vector<MultiIndex> idxs;
        enumerateIndices(fr.dependentLabels(dep), order, idxs);
        for (const auto& d : idxs) {
            if (indexOrder(d) == 0) continue;
            Expr z = totalDerivative(w, d);
            for (Label l : frameLabels(fr.frame)) {
                Expr xl = X.xiOf(l);
                if (xl.num().isZero()) continue;
                // skip labels the dependent does not vary with (its jets
                // in that direction vanish identically)
                if (!Registry::get().dependsOn(dep, l)) continue;
                z += xl * Expr::atom(makeAtom(dep, indexPlus(d, l)));
            }
            table.emplace(makeAtom(dep, d), std::move(z));
        }
    }
    return table;
}

Expr applyGenerator(const Generator& X, const Expr& F, const JetFrame& fr) {
    int order = 0;
    for (uint16_t dep : fr.dependents) order = std::max(order, F.maxJetOrder(dep));
    if (order > 2) throw NlError("generator application supports jet order <= 2");
    Expr res = Expr::zero();
    for (Label l : frameLabels(fr.frame)) {
        Expr xl = X.xiOf(l);
        if (!xl.num().isZero()) res += xl * partialExplicit(F, l, fr);
    }
    for (uint16_t dep : fr.dependents) {
        Expr ed = X.etaOf(dep);
        if (!ed.num().isZero()) res += ed * partialAtom(F, makeAtom(dep));
    }
    if (order >= 1) {
        auto table = prolong(X, fr, std::max(order, 1));
        for (const auto& [atom, zeta] : table) {
            Expr p = partialAtom(F, atom);
            if (!p.num().isZero()) res += zeta * p;
        }
    }
    return res;
}

Expr xiDivergence(const Generator& X, const JetFrame& fr) {
    Expr d = Expr::zero();
    for (Label l : frameLabels(fr.frame)) {
        Expr xl = X.xiOf(l);
        if (!xl.num().isZero()) d += totalDerivative(xl, l);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Noether operator
// ---------------------------------------------------------------------------

namespace {

/// Symmetrized second-order partial: d F / d u_{ij} divided by the number of
/// distinct orderings of (i, j).
Expr symPartial2(const Expr& F, uint16_t dep, Label i, Label j) {
    MultiIndex d = emptyIndex();
    d[static_cast<int>(i)]++;
    d[static_cast<int>(j)]++;
    Expr p = partialAtom(F, makeAtom(dep, d));
    if (i != j) p = p * Expr::fromRational(Rational(1, 2));
    return p;
}

}  // namespace

Expr noetherOperator(const Generator& X, const Expr& F, Label i, const JetFrame& fr) {
    int order = 0;
    for (uint16_t dep : fr.dependents) order = std::max(order, F.maxJetOrder(dep));
    if (order > 2) throw NlError("Noether operator supports jet order <= 2");
    Expr res = X.xiOf(i) * F;
    for (uint16_t dep : fr.dependents) {
        std::vector<Label> ls = fr.dependentLabels(dep);
        if (std::find(ls.begin(), ls.end(), i) == ls.end()) continue;
        Expr w = characteristic(X, dep, fr);
        Expr d1 = partialAtom(F, makeAtom(dep, {i}));
        if (order == 2)
            for (Label j : ls) d1 -= totalDerivative(symPartial2(F, dep, i, j), j);
        res += w * d1;
        if (order == 2)
            for (Label j : ls) {
                Expr s = symPartial2(F, dep, i, j);
                if (!s.num().isZero()) res += totalDerivative(w, j) * s;
            }
    }
    return res;
}

Generator commutator(const Generator& X, const Generator& Y, const JetFrame& fr) {
    auto act = [&](const Generator& A, const Expr& f) {
        Expr r = Expr::zero();
        for (Label l : frameLabels(fr.frame)) {
            Expr xl = A.xiOf(l);
            if (!xl.num().isZero()) r += xl * partialExplicit(f, l, fr);
        }
        for (uint16_t dep : fr.dependents) {
            Expr ed = A.etaOf(dep);
            if (!ed.num().isZero()) r += ed * partialAtom(f, makeAtom(dep));
        }
        return r;
    };
    Generator r;
    for (Label l : frameLabels(fr.frame)) r.xi.emplace(l, act(X, Y.xiOf(l)) - act(Y, X.xiOf(l)));
    for (uint16_t dep : fr.dependents)
        r.eta.emplace(dep, act(X, Y.etaOf(dep)) - act(Y, X.etaOf(dep)));
    return r;
}

}  // namespace noetherlab
