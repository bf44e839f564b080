#include "noetherlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace noetherlab {

namespace {

const double kGammaCycle[4] = {1.4, 5.0 / 3.0, 1.8, 3.0};

struct BoundAtom {
    Atom atom;
    Expr rhs;  // fully reduced: references free atoms only
};

/// Classifies the atoms reachable from the expression into free and bound.
void classifyAtoms(const Expr& raw, Reducer& red, std::vector<BoundAtom>& bound,
                   std::set<Atom, AtomCmp>& free) {
    std::vector<Atom> frontier = raw.atoms();
    std::set<Atom, AtomCmp> seen;
    while (!frontier.empty()) {
        Atom a = frontier.back();
        frontier.pop_back();
        if (!seen.insert(a).second) continue;
        const Relation* r = red.matchRule(a);
        if (!r) {
            if (a.sym != SYM_J) free.insert(a);
            continue;
        }
        Expr rhs = red.reducedRhs(a, *r);
        bound.push_back({a, rhs});
        for (const Atom& b : rhs.atoms()) frontier.push_back(b);
    }
    // the Jacobian base evaluates through the first-order phi jets
    bool needsJ = raw.containsSym(SYM_J);
    for (const auto& b : bound)
        if (b.rhs.containsSym(SYM_J)) needsJ = true;
    if (needsJ) {
        free.insert(makeAtom(SYM_PHI1, {Label::Xi}));
        free.insert(makeAtom(SYM_PHI1, {Label::Eta}));
        free.insert(makeAtom(SYM_PHI2, {Label::Xi}));
        free.insert(makeAtom(SYM_PHI2, {Label::Eta}));
    }
}

/// Bases that carry gamma-dependent exponents must be sampled positive.
void collectPositiveBases(const Expr& e, std::set<uint16_t>& positive) {
    for (const Poly* p : {&e.num(), &e.den()})
        for (const auto& t : p->terms)
            for (const auto& f : t.mono)
                if (!f.exp.b.isZero() || !f.exp.a.isInteger()) positive.insert(f.base.sym);
}

}  // namespace

RandomCheckResult randomPointCheck(const Expr& raw, Reducer& red, const ModelConfig& cfg,
                                   int trials, double tol, uint64_t seed) {
    if (trials < 1) throw NlError("randomPointCheck needs at least one trial");
    RandomCheckResult res;
    res.trials = trials;
    res.seed = seed;
    res.tol = tol;
    OracleRng rng(seed);

    std::vector<BoundAtom> bound;
    std::set<Atom, AtomCmp> free;
    classifyAtoms(raw, red, bound, free);
    std::set<uint16_t> positive;
    positive.insert(SYM_J);
    positive.insert(SYM_RHO);
    collectPositiveBases(raw, positive);
    for (const auto& b : bound) collectPositiveBases(b.rhs, positive);

    bool needsJ = free.count(makeAtom(SYM_PHI1, {Label::Xi})) &&
                  free.count(makeAtom(SYM_PHI2, {Label::Eta})) &&
                  free.count(makeAtom(SYM_PHI1, {Label::Eta})) &&
                  free.count(makeAtom(SYM_PHI2, {Label::Xi}));

    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        double gamma;
        if (cfg.gamma)
            gamma = toDouble(*cfg.gamma);
        else if (trial == trials - 1)
            gamma = 1.1 + 1.9 * rng.uniform01();
        else
            gamma = kGammaCycle[trial % 4];

        Assignment asg;
        for (const Atom& a : free) {
            double v = rng.sampleValue();
            if (positive.count(a.sym)) v = std::fabs(v);
            asg[a] = v;
        }
        if (needsJ) {
            // resample the deformation jets until the determinant clears 0.1
            for (int attempt = 0; attempt < 100; ++attempt) {
                double det = asg[makeAtom(SYM_PHI1, {Label::Xi})] *
                                 asg[makeAtom(SYM_PHI2, {Label::Eta})] -
                             asg[makeAtom(SYM_PHI1, {Label::Eta})] *
                                 asg[makeAtom(SYM_PHI2, {Label::Xi})];
                if (det > 0.1) break;
                for (auto s : {SYM_PHI1, SYM_PHI2})
                    for (auto l : {Label::Xi, Label::Eta})
                        asg[makeAtom(static_cast<uint16_t>(s), {l})] = rng.sampleValue();
            }
        }
        try {
            for (const auto& b : bound) asg[b.atom] = evalNumeric(b.rhs, asg, gamma).value;
            EvalResult er = evalNumeric(raw, asg, gamma);
            double rel = std::fabs(er.value) / std::max(1.0, er.scale);
            worst = std::max(worst, rel);
            if (rel >= tol && res.failure.empty())
                res.failure = "trial " + std::to_string(trial) + ": relative residual " +
                              std::to_string(rel);
        } catch (const NlError& e) {
            res.failure = "trial " + std::to_string(trial) + ": " + e.what();
            res.worstResidual = worst;
            res.pass = false;
            return res;
        }
    }
    res.worstResidual = worst;
    res.pass = worst < tol;
    return res;
}

RandomCheckResult randomPointCheckVector(const ConservedVector& T, const ModelConfig& cfg,
                                         const std::vector<std::string>& relationTags,
                                         int trials, double tol, uint64_t seed) {
    if (T.frame == Frame::Lagrangian) {
        Expr div = totalDerivative(T.comp[0], Label::T) +
                   totalDerivative(T.comp[1], Label::Xi) +
                   totalDerivative(T.comp[2], Label::Eta);
        ELSystem sys = eulerLagrange(cfg);
        bool psi = std::find(relationTags.begin(), relationTags.end(), "psi") !=
                   relationTags.end();
        Reducer red(&sys, psi ? psiRelations(cfg) : RelationSet::none());
        return randomPointCheck(div, red, cfg, trials, tol, seed);
    }
    Expr div = totalDerivative(T.comp[0], Label::T) + totalDerivative(T.comp[1], Label::X) +
               totalDerivative(T.comp[2], Label::Y);
    Reducer red(eulerianRelations(cfg, relationTags));
    return randomPointCheck(div, red, cfg, trials, tol, seed);
}

// ---------------------------------------------------------------------------
// Manufactured solutions
// ---------------------------------------------------------------------------

ManufacturedSolution ManufacturedSolution::uniformFlow() {
    ManufacturedSolution s;
    s.name = "uniform-flow";
    s.entropy = EntropyMode::Isentropic;
    s.phi1 = parse("xi + t/2");
    s.phi2 = parse("eta + t/3");
    s.entropyS = parse("1");
    s.extras[SYM_H] = parse("xi*eta");
    return s;
}

ManufacturedSolution ManufacturedSolution::dilation() {
    ManufacturedSolution s;
    s.name = "dilation";
    s.entropy = EntropyMode::Isentropic;
    s.phi1 = parse("(1 + t/2)*xi");
    s.phi2 = parse("(1 + t/2)*eta");
    s.entropyS = parse("1");
    s.extras[SYM_H] = parse("xi*eta");
    return s;
}

ManufacturedSolution ManufacturedSolution::stratifiedRest() {
    ManufacturedSolution s;
    s.name = "stratified-rest";
    s.entropy = EntropyMode::General;
    s.phi1 = parse("xi^2/2");
    s.phi2 = parse("eta");
    s.entropyS = parse("xi^gamma");
    s.extras[SYM_PSI1] = parse("xi*eta");
    s.extras[SYM_PSI2] = parse("-2*xi*eta/gamma");
    s.extras[SYM_F1] = parse("1");  // F(S) = S
    s.extras[SYM_F2] = parse("0");
    return s;
}

ManufacturedSolution ManufacturedSolution::nonSolution() {
    ManufacturedSolution s;
    s.name = "non-solution";
    s.entropy = EntropyMode::Isentropic;
    s.phi1 = parse("xi + t^2*xi^2");
    s.phi2 = parse("eta");
    s.entropyS = parse("1");
    return s;
}

namespace {

/// Closed form for an atom on the manufactured solution, or nullopt for pure
/// labels (evaluated directly). Specializes gamma to the configuration.
std::optional<Expr> closedForm(const ManufacturedSolution& sol, const Atom& a,
                               const ModelConfig& cfg) {
    const auto& info = Registry::get().info(a.sym);
    if (info.kind == SymbolKind::Label) return std::nullopt;
    auto derive = [&](const Expr& base) {
        Expr e = cfg.gamma ? specializeGamma(base, *cfg.gamma) : base;
        for (int l = 0; l < kNumLabels; ++l)
            for (int k = 0; k < a.idx[l]; ++k) e = totalDerivative(e, static_cast<Label>(l));
        return e;
    };
    if (a.sym == SYM_PHI1) return derive(sol.phi1);
    if (a.sym == SYM_PHI2) return derive(sol.phi2);
    if (a.sym == SYM_S || a.sym == SYM_SC) return derive(sol.entropyS);
    auto it = sol.extras.find(a.sym);
    if (it != sol.extras.end()) return derive(it->second);
    throw NlError("manufactured solution '" + sol.name + "' has no closed form for " +
                  atomName(a));
}

Expr detClosed(const ManufacturedSolution& sol, const ModelConfig& cfg) {
    Expr p1 = cfg.gamma ? specializeGamma(sol.phi1, *cfg.gamma) : sol.phi1;
    Expr p2 = cfg.gamma ? specializeGamma(sol.phi2, *cfg.gamma) : sol.phi2;
    return totalDerivative(p1, Label::Xi) * totalDerivative(p2, Label::Eta) -
           totalDerivative(p1, Label::Eta) * totalDerivative(p2, Label::Xi);
}

std::vector<std::pair<Atom, Expr>> closedRules(const ManufacturedSolution& sol, const Expr& e,
                                               const ModelConfig& cfg) {
    std::vector<std::pair<Atom, Expr>> rules;
    for (const Atom& a : e.atoms()) {
        if (a.sym == SYM_J) {
            rules.emplace_back(a, detClosed(sol, cfg));
            continue;
        }
        auto cf = closedForm(sol, a, cfg);
        if (cf) rules.emplace_back(a, *cf);
    }
    return rules;
}

}  // namespace

CertificateReport certifySolution(const ManufacturedSolution& sol, const ModelConfig& cfg) {
    CertificateReport rep;
    if ((cfg.entropy == EntropyMode::General) != (sol.entropy == EntropyMode::General)) {
        rep.witness = "entropy mode mismatch";
        return rep;
    }
    try {
        ELSystem sys = eulerLagrange(cfg);
        for (const Expr* E : {&sys.E1, &sys.E2}) {
            Expr r = substitute(*E, closedRules(sol, *E, cfg));
            if (!r.isZero()) {
                rep.witness = "system residual: " + r.leadingTermStr();
                return rep;
            }
        }
        if (cfg.entropy == EntropyMode::General &&
            (sol.extras.count(SYM_PSI1) || sol.extras.count(SYM_PSI2))) {
            Expr c1 = parseModel("psi1_eta*S_xi - (psi1_xi*S_eta + xi*S_xi)", cfg);
            Expr c2 = parseModel("S_xi*psi2_eta - S_eta*psi2_xi + 2*S", cfg);
            for (const Expr* c : {&c1, &c2}) {
                Expr r = substitute(*c, closedRules(sol, *c, cfg));
                if (!r.isZero()) {
                    rep.witness = "side-relation residual: " + r.leadingTermStr();
                    return rep;
                }
            }
        }
    } catch (const NlError& e) {
        rep.witness = e.what();
        return rep;
    }
    rep.valid = true;
    return rep;
}

ManufacturedReport manufacturedCheck(const ConservedVector& T, const ManufacturedSolution& sol,
                                     const GridSpec& grid, const ModelConfig& cfg) {
    ManufacturedReport rep;
    if (!cfg.gamma) throw NlError("manufacturedCheck needs an exact rational gamma");
    if (grid.resolutions.size() < 3)
        throw NlError("at least 3 resolutions are needed for an order estimate");
    for (int n : grid.resolutions)
        if (n < (grid.stencilOrder == 4 ? 5 : 3)) throw NlError("grid too coarse");
    if (grid.stencilOrder != 2 && grid.stencilOrder != 4)
        throw NlError("stencil order must be 2 or 4");
    double gamma = toDouble(*cfg.gamma);

    // closed forms for every atom of the vector plus the deformation jets J
    // evaluates through
    std::map<Atom, Expr, AtomCmp> closed;
    auto need = [&](const Atom& a) {
        if (closed.count(a)) return;
        if (a.sym == SYM_J) return;
        auto cf = closedForm(sol, a, cfg);
        if (cf) closed.emplace(a, *cf);
    };
    for (int k = 0; k < 3; ++k)
        for (const Atom& a : T.comp[k].atoms()) need(a);
    for (auto s : {SYM_PHI1, SYM_PHI2})
        for (auto l : {Label::Xi, Label::Eta}) need(makeAtom(static_cast<uint16_t>(s), {l}));

    double tScale = 1.0;
    for (std::size_t ri = 0; ri < grid.resolutions.size(); ++ri) {
        int n = grid.resolutions[ri];
        double ht = (sol.t1 - sol.t0) / (n - 1);
        double hx = (sol.x1 - sol.x0) / (n - 1);
        int margin = grid.stencilOrder == 4 ? 2 : 1;

        // component values on the full lattice, then finite differences
        std::vector<double> vals(3ull * n * n * n);
        auto at = [&](int k, int i, int j, int l) -> double& {
            return vals[((std::size_t(k) * n + i) * n + j) * n + l];
        };
        Assignment labels;
        Assignment asg;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) {
                    labels[makeAtom(SYM_T)] = sol.t0 + i * ht;
                    labels[makeAtom(SYM_XI)] = sol.x0 + j * hx;
                    labels[makeAtom(SYM_ETA)] = sol.x0 + l * hx;
                    asg = labels;
                    for (const auto& [a, cf] : closed)
                        asg[a] = evalNumeric(cf, labels, gamma).value;
                    for (int k = 0; k < 3; ++k) {
                        double v = evalNumeric(T.comp[k], asg, gamma).value;
                        at(k, i, j, l) = v;
                        tScale = std::max(tScale, std::fabs(v));
                    }
                }
        auto diff = [&](int k, int axis, int i, int j, int l, double h) {
            int di = axis == 0, dj = axis == 1, dl = axis == 2;
            auto pt = [&](int s) { return at(k, i + s * di, j + s * dj, l + s * dl); };
            if (grid.stencilOrder == 2) return (pt(1) - pt(-1)) / (2 * h);
            return (-pt(2) + 8 * pt(1) - 8 * pt(-1) + pt(-2)) / (12 * h);
        };
        double norm = 0.0;
        for (int i = margin; i < n - margin; ++i)
            for (int j = margin; j < n - margin; ++j)
                for (int l = margin; l < n - margin; ++l) {
                    double d = diff(0, 0, i, j, l, ht) + diff(1, 1, i, j, l, hx) +
                               diff(2, 2, i, j, l, hx);
                    norm = std::max(norm, std::fabs(d));
                }
        rep.norms.push_back(norm);
    }

    auto normsText = [&] {
        std::string t = "norms:";
        for (double n : rep.norms) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.3e", n);
            t += buf;
        }
        return t;
    };
    double finest = rep.norms.back();
    if (finest < 1e-9 * tScale) {
        rep.machineZero = true;
        rep.pass = true;
        rep.detail = "divergence at machine precision; " + normsText();
        return rep;
    }
    // least-squares slope of log(norm) against log(h)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < rep.norms.size(); ++i) {
        if (rep.norms[i] <= 0) continue;
        double x = std::log(1.0 / (grid.resolutions[i] - 1));
        double y = std::log(rep.norms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    rep.observedOrder = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
    rep.pass = rep.observedOrder >= grid.stencilOrder - 0.2;
    char ord[48];
    std::snprintf(ord, sizeof ord, "observed order %.3f; ", rep.observedOrder);
    rep.detail = ord + normsText();
    return rep;
}

}  // namespace noetherlab
