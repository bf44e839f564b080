#include "noetherlab/noether.hpp"

#include "noetherlab/gamma_linalg.hpp"

namespace noetherlab {

namespace {

const JetFrame& lagr() {
    static const JetFrame fr = JetFrame::lagrangian();
    return fr;
}

/// X~L + L D_i xi^i, reduced by the psi side relations when the generator
/// references them.
Expr symmetryDefect(const Generator& X, const Expr& L, const ModelConfig& cfg) {
    Expr R = applyGenerator(X, L, lagr()) + L * xiDivergence(X, lagr());
    bool usesPsi = false;
    for (const auto& [l, e] : X.xi)
        if (e.containsSym(SYM_PSI1) || e.containsSym(SYM_PSI2)) usesPsi = true;
    for (const auto& [d, e] : X.eta)
        if (e.containsSym(SYM_PSI1) || e.containsSym(SYM_PSI2)) usesPsi = true;
    if (usesPsi) {
        Reducer red(psiRelations(cfg));
        R = red.reduce(R);
    }
    return R;
}

bool isPointFunction(const Expr& e) {
    for (const Atom& a : e.atoms()) {
        const auto& info = Registry::get().info(a.sym);
        if (info.kind == SymbolKind::Protected) return false;
        if (info.kind == SymbolKind::Dependent && indexOrder(a.idx) >= 1) return false;
    }
    return true;
}

/// Antiderivative in a bare point atom (phi1, phi2) or in t.
Expr integrateAtom(const Expr& e, const Atom& a) {
    Expr sum = Expr::zero();
    for (const auto& t : e.num().terms) {
        Term nt = t;
        bool found = false;
        for (auto& f : nt.mono)
            if (f.base == a) {
                if (!f.exp.isInteger() || f.exp.a.num() < 0)
                    throw NlError("cannot integrate this power of " + atomName(a));
                Exponent e1 = f.exp + Exponent(1);
                nt.coef = nt.coef / e1.asCoefficient();
                f.exp = e1;
                found = true;
            }
        if (!found) nt.mono.push_back(Factor{a, Exponent(1)});
        Poly p;
        p.terms.push_back(nt);
        sum += Expr::fromPoly(std::move(p));
    }
    if (!e.denIsOne()) return sum / Expr::fromPoly(e.den());
    return sum;
}

/// Reconstructs b(t, xi, eta, phi1, phi2) with D_t b = R, if one exists.
std::optional<Expr> reconstructDensity(const Expr& R) {
    Atom p1t = makeAtom(SYM_PHI1, {Label::T}), p2t = makeAtom(SYM_PHI2, {Label::T});
    Expr P1 = partialAtom(R, p1t);
    Expr P2 = partialAtom(R, p2t);
    if (!isPointFunction(P1) || !isPointFunction(P2)) return std::nullopt;
    Expr P0 = R - P1 * Expr::atom(p1t) - P2 * Expr::atom(p2t);
    if (!P0.isZero() && !isPointFunction(P0)) return std::nullopt;

    Atom phi1 = makeAtom(SYM_PHI1), phi2 = makeAtom(SYM_PHI2), t = makeAtom(SYM_T);
    Expr b = integrateAtom(P1, phi1);
    Expr r2 = P2 - partialAtom(b, phi2);
    b += integrateAtom(r2, phi2);
    Expr r0 = P0 - partialExplicit(b, Label::T, lagr());
    b += integrateAtom(r0, t);
    // decidable final check
    Expr defect = totalDerivative(b, Label::T) - R;
    if (!defect.isZero()) return std::nullopt;
    return b;
}

}  // namespace

CertificateResult divergenceSymmetryTest(const Generator& X, const Expr& L,
                                         const ModelConfig& cfg,
                                         const DivergenceCertificate* provided) {
    CertificateResult res;
    Expr R = symmetryDefect(X, L, cfg);
    if (provided) {
        Expr defect = R - totalDerivative(provided->Bt, Label::T) -
                      totalDerivative(provided->Bxi, Label::Xi) -
                      totalDerivative(provided->Beta, Label::Eta);
        if (defect.isZero()) {
            res.accepted = true;
            res.cert = *provided;
        } else {
            res.witness = defect.leadingTermStr();
        }
        return res;
    }
    for (uint16_t dep : lagr().dependents) {
        Expr v = variationalDerivative(R, dep, lagr());
        if (!v.isZero()) {
            res.witness = v.leadingTermStr();
            return res;
        }
    }
    auto b = reconstructDensity(R);
    if (!b) {
        res.witness = "variational test passed but no density of the form "
                      "b(t, xi, eta, phi1, phi2) integrates the defect";
        return res;
    }
    res.accepted = true;
    res.cert.Bt = *b;
    return res;
}

ConservedVector buildConservedVector(const Generator& X, const Expr& L,
                                     const DivergenceCertificate& cert) {
    // the certificate must actually close the symmetry defect
    Expr R = applyGenerator(X, L, lagr()) + L * xiDivergence(X, lagr());
    bool usesPsi = false;
    for (const auto& [l, e] : X.xi)
        if (e.containsSym(SYM_PSI1) || e.containsSym(SYM_PSI2)) usesPsi = true;
    for (const auto& [d, e] : X.eta)
        if (e.containsSym(SYM_PSI1) || e.containsSym(SYM_PSI2)) usesPsi = true;
    Expr defect = R - totalDerivative(cert.Bt, Label::T) -
                  totalDerivative(cert.Bxi, Label::Xi) -
                  totalDerivative(cert.Beta, Label::Eta);
    if (usesPsi) {
        ModelConfig general;
        Reducer red(psiRelations(general));
        defect = red.reduce(defect);
    }
    if (!defect.isZero())
        throw NlError("certificate not accepted: the divergence-symmetry defect survives as " +
                      defect.leadingTermStr());
    ConservedVector T;
    T.frame = Frame::Lagrangian;
    T.comp[0] = noetherOperator(X, L, Label::T, lagr()) - cert.Bt;
    T.comp[1] = noetherOperator(X, L, Label::Xi, lagr()) - cert.Bxi;
    T.comp[2] = noetherOperator(X, L, Label::Eta, lagr()) - cert.Beta;
    return T;
}

std::optional<GammaRat> matchScale(const ConservedVector& built,
                                   const ConservedVector& printed) {
    GammaRat sigma(0);
    bool have = false;
    for (int k = 0; k < 3 && !have; ++k) {
        const Poly& b = built.comp[k].num();
        const Poly& p = printed.comp[k].num();
        if (b.isZero() || p.isZero()) continue;
        // candidate from the leading terms (canonical order makes them align
        // whenever a shared scale exists)
        if (!monoEqual(b.terms[0].mono, p.terms[0].mono)) return std::nullopt;
        sigma = b.terms[0].coef / p.terms[0].coef;
        have = true;
    }
    if (!have) return std::nullopt;
    Expr s = Expr::fromCoefficient(sigma);
    for (int k = 0; k < 3; ++k)
        if (!canonicalEq(built.comp[k], s * printed.comp[k])) return std::nullopt;
    return sigma;
}

ClawReport verifyConservationLaw(const ConservedVector& T, const ELSystem& sys,
                                 const RelationSet& rels) {
    if (T.frame != Frame::Lagrangian)
        throw NlError("verifyConservationLaw expects a Lagrangian-frame vector");
    ClawReport rep;
    Expr div = totalDerivative(T.comp[0], Label::T) + totalDerivative(T.comp[1], Label::Xi) +
               totalDerivative(T.comp[2], Label::Eta);
    Reducer red(&sys, rels);
    Expr r = red.reduce(div);
    rep.fired = red.firedRelations();
    if (r.isZero()) {
        rep.conserved = true;
    } else {
        rep.witness = r.leadingTermStr();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Divergence-symmetry gate on the general combination
// ---------------------------------------------------------------------------

GateReport divergenceGate(const Catalog& cat, const ModelConfig& cfg) {
    GateReport rep;
    Expr L = buildLagrangian(cfg);

    // admitted combination with one symbolic coefficient per finite basis
    // generator; families enter unscaled (their contribution must drop from
    // the constraints on its own)
    std::vector<std::pair<uint16_t, const CatalogEntry*>> scaled;
    Generator X;
    for (const CatalogEntry* e : cat.generators(cfg)) {
        if (e->id == "Xh" || e->id == "XF") {
            X = X + e->generator(cfg);
            continue;
        }
        uint16_t c = SYM_COUNT;
        if (e->id == "X1") c = SYM_C1;
        else if (e->id == "X2") c = SYM_C2;
        else if (e->id == "X3") c = SYM_C3;
        else if (e->id == "X4") c = SYM_C4;
        else if (e->id == "X5") c = SYM_C5;
        else if (e->id == "X6") c = SYM_C6;
        else if (e->id == "X7") c = SYM_C7;
        else if (e->id == "X8" || e->id == "X8n") c = SYM_C8;
        else if (e->id == "X9" || e->id == "X9n") c = SYM_C9;
        else if (e->id == "X10n") c = SYM_C10T;
        else throw NlError("no gate coefficient assigned to " + e->id);
        scaled.emplace_back(c, e);
        X = X + e->generator(cfg).scaled(Expr::atom(makeAtom(c)));
    }

    Expr R = symmetryDefect(X, L, cfg);

    // variational test, split by coefficient channel
    std::vector<uint16_t> params;
    for (auto& [c, e] : scaled) params.push_back(c);
    std::vector<GammaRow> rows;
    std::string detail;
    for (uint16_t dep : lagr().dependents) {
        Expr V = variationalDerivative(R, dep, lagr());
        // family channel: the coefficient-free part must vanish identically
        Expr vfree = V;
        for (uint16_t c : params)
            vfree = substitute(vfree, {{makeAtom(c), Expr::zero()}});
        if (!vfree.isZero()) {
            detail += "family contribution is not variational: " + vfree.leadingTermStr() + "; ";
            rep.detail = detail;
            return rep;
        }
        // linear rows over the c's, one per monomial
        std::map<std::string, GammaRow> byMono;
        for (std::size_t k = 0; k < params.size(); ++k) {
            // independent monomial keys require the protected base eliminated
            Expr Vk = eliminateProtected(partialAtom(V, makeAtom(params[k])));
            for (const auto& t : Vk.num().terms) {
                Term key;
                key.coef = GammaRat(1);
                key.mono = t.mono;
                Poly kp;
                kp.terms.push_back(key);
                std::string ks = Expr::fromPoly(kp).str();
                auto& row = byMono[ks];
                if (row.empty()) row.assign(params.size(), GammaRat(0));
                row[k] = row[k] + t.coef;
            }
        }
        for (auto& [ks, row] : byMono) rows.push_back(row);
    }
    auto rref = rowReduce(std::move(rows));
    for (const auto& row : rref) {
        // clear denominators into a polynomial condition on the c's
        Expr cond = Expr::zero();
        GammaPoly lcm(1);
        for (const auto& c : row)
            if (!c.isZero()) lcm = lcm * c.den();
        for (std::size_t k = 0; k < params.size(); ++k) {
            if (row[k].isZero()) continue;
            GammaRat coef = row[k] * GammaRat(lcm, GammaPoly(1));
            cond += Expr::fromCoefficient(coef) * Expr::atom(makeAtom(params[k]));
        }
        rep.constraints.push_back(cond);
    }

    // certificate density for the constrained combination
    Expr Rc = R;
    auto applyConstraints = [&](Expr e) {
        // substitute the rref pivots (pivot = leading c with coefficient one)
        std::vector<std::pair<Atom, Expr>> subst;
        for (const auto& row : rref) {
            std::size_t lead = 0;
            while (lead < params.size() && row[lead].isZero()) ++lead;
            if (lead >= params.size()) continue;
            Expr rhs = Expr::zero();
            for (std::size_t j = lead + 1; j < params.size(); ++j)
                if (!row[j].isZero())
                    rhs -= Expr::fromCoefficient(row[j]) * Expr::atom(makeAtom(params[j]));
            subst.emplace_back(makeAtom(params[lead]), rhs);
        }
        return substitute(e, subst);
    };
    Rc = applyConstraints(R);
    auto b = reconstructDensity(Rc);
    if (!b) {
        detail += "no certificate density for the constrained combination; ";
        rep.detail = detail;
        return rep;
    }
    rep.bDensity = *b;
    rep.consistent = true;
    rep.detail = detail;
    return rep;
}

}  // namespace noetherlab
