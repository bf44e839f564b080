#include "noetherlab/euler_map.hpp"

namespace noetherlab {

namespace {

Expr EP(const std::string& s, const ModelConfig& cfg) {
    return parseModel(s, cfg, Frame::Eulerian);
}

}  // namespace

std::vector<std::pair<Atom, Expr>> frameDictionary(const ModelConfig& cfg) {
    std::vector<std::pair<Atom, Expr>> rules;
    auto add = [&](uint16_t sym, std::initializer_list<Label> idx, const std::string& rhs) {
        rules.emplace_back(makeAtom(sym, idx), EP(rhs, cfg));
    };
    // positions and velocities
    add(SYM_PHI1, {}, "x");
    add(SYM_PHI2, {}, "y");
    add(SYM_PHI1, {Label::T}, "u");
    add(SYM_PHI2, {Label::T}, "v");
    // material accelerations
    add(SYM_PHI1, {Label::T, Label::T}, "u_t + u*u_x + v*u_y");
    add(SYM_PHI2, {Label::T, Label::T}, "v_t + u*v_x + v*v_y");
    // velocity-gradient rules
    rules.emplace_back(makeAtom(SYM_PHI1, {Label::T, Label::Xi}),
                       Expr::atom(makeAtom(SYM_PHI1, {Label::Xi})) * EP("u_x", cfg) +
                           Expr::atom(makeAtom(SYM_PHI2, {Label::Xi})) * EP("u_y", cfg));
    rules.emplace_back(makeAtom(SYM_PHI1, {Label::T, Label::Eta}),
                       Expr::atom(makeAtom(SYM_PHI1, {Label::Eta})) * EP("u_x", cfg) +
                           Expr::atom(makeAtom(SYM_PHI2, {Label::Eta})) * EP("u_y", cfg));
    rules.emplace_back(makeAtom(SYM_PHI2, {Label::T, Label::Xi}),
                       Expr::atom(makeAtom(SYM_PHI1, {Label::Xi})) * EP("v_x", cfg) +
                           Expr::atom(makeAtom(SYM_PHI2, {Label::Xi})) * EP("v_y", cfg));
    rules.emplace_back(makeAtom(SYM_PHI2, {Label::T, Label::Eta}),
                       Expr::atom(makeAtom(SYM_PHI1, {Label::Eta})) * EP("v_x", cfg) +
                           Expr::atom(makeAtom(SYM_PHI2, {Label::Eta})) * EP("v_y", cfg));
    // advected function symbols: value maps to the Eulerian namesake, the
    // label derivatives go through the chain rule
    struct FuncMap {
        uint16_t lagr, euler;
    };
    std::vector<FuncMap> funcs = {{SYM_H, SYM_HE}, {SYM_PSI2, SYM_PSI2E}};
    if (cfg.entropy == EntropyMode::General) funcs.push_back({SYM_S, SYM_SE});
    for (const FuncMap& f : funcs) {
        rules.emplace_back(makeAtom(f.lagr), Expr::atom(makeAtom(f.euler)));
        rules.emplace_back(makeAtom(f.lagr, {Label::Xi}),
                           Expr::atom(makeAtom(SYM_PHI1, {Label::Xi})) *
                                   Expr::atom(makeAtom(f.euler, {Label::X})) +
                               Expr::atom(makeAtom(SYM_PHI2, {Label::Xi})) *
                                   Expr::atom(makeAtom(f.euler, {Label::Y})));
        rules.emplace_back(makeAtom(f.lagr, {Label::Eta}),
                           Expr::atom(makeAtom(SYM_PHI1, {Label::Eta})) *
                                   Expr::atom(makeAtom(f.euler, {Label::X})) +
                               Expr::atom(makeAtom(SYM_PHI2, {Label::Eta})) *
                                   Expr::atom(makeAtom(f.euler, {Label::Y})));
    }
    // the F-family keeps its chain structure with the Eulerian argument
    for (int k = 0; k <= 4; ++k)
        rules.emplace_back(makeAtom(static_cast<uint16_t>(SYM_F0 + k)),
                           Expr::atom(makeAtom(static_cast<uint16_t>(SYM_FE0 + k))));
    return rules;
}

MapResult toEulerian(const ConservedVector& T, const ModelConfig& cfg) {
    if (T.frame != Frame::Eulerian && T.frame != Frame::Lagrangian)
        throw NlError("unexpected frame tag");
    if (T.frame == Frame::Eulerian) throw NlError("toEulerian expects a Lagrangian-frame vector");
    MapResult res;
    Expr Jinv = Expr::atomPow(makeAtom(SYM_J), Exponent(-1));
    Expr p1 = Expr::atom(makeAtom(SYM_PHI1)), p2 = Expr::atom(makeAtom(SYM_PHI2));
    auto j = [](uint16_t s, Label l) { return Expr::atom(makeAtom(s, {l})); };

    std::array<Expr, 3> pre;
    pre[0] = Jinv * T.comp[0];
    pre[1] = Jinv * (Expr::atom(makeAtom(SYM_PHI1, {Label::T})) * T.comp[0] +
                     j(SYM_PHI1, Label::Xi) * T.comp[1] + j(SYM_PHI1, Label::Eta) * T.comp[2]);
    pre[2] = Jinv * (Expr::atom(makeAtom(SYM_PHI2, {Label::T})) * T.comp[0] +
                     j(SYM_PHI2, Label::Xi) * T.comp[1] + j(SYM_PHI2, Label::Eta) * T.comp[2]);

    auto dict = frameDictionary(cfg);
    Expr rhoInv = EP("rho", cfg).powExp(Exponent(-1));
    ConservedVector out;
    out.frame = Frame::Eulerian;
    std::set<std::string> witnesses;
    for (int k = 0; k < 3; ++k) {
        Expr e = substitute(pre[k], dict);
        e = eliminateProtected(e);
        e = substitute(e, {{makeAtom(SYM_J), rhoInv}});
        e = e.withoutConditions();
        for (const Atom& a : e.atoms()) {
            auto f = symbolFrame(a.sym);
            if (f && *f == Frame::Lagrangian) witnesses.insert(atomName(a));
        }
        out.comp[k] = e;
    }
    if (!witnesses.empty()) {
        res.mapped = false;
        res.witnesses.assign(witnesses.begin(), witnesses.end());
        return res;
    }
    res.mapped = true;
    res.image = out;
    return res;
}

RelationSet eulerianRelations(const ModelConfig& cfg, const std::vector<std::string>& tags) {
    RelationSet rs;
    // evolution rules for the gas variables; p is eliminated via S rho^gamma
    rs.add(Relation{makeAtom(SYM_RHO, {Label::T}),
                    EP("-(u*rho_x + v*rho_y) - rho*(u_x + v_y)", cfg), "mass"});
    if (cfg.entropy == EntropyMode::General) {
        rs.add(Relation{makeAtom(SYM_U, {Label::T}),
                        EP("-(u*u_x + v*u_y) - S_x*rho^(gamma-1) - gamma*S*rho^(gamma-2)*rho_x",
                           cfg),
                        "momentum-x"});
        rs.add(Relation{makeAtom(SYM_V, {Label::T}),
                        EP("-(u*v_x + v*v_y) - S_y*rho^(gamma-1) - gamma*S*rho^(gamma-2)*rho_y",
                           cfg),
                        "momentum-y"});
        rs.add(Relation{makeAtom(SYM_SE, {Label::T}), EP("-(u*S_x + v*S_y)", cfg),
                        "entropy-advection"});
    } else {
        rs.add(Relation{makeAtom(SYM_U, {Label::T}),
                        EP("-(u*u_x + v*u_y) - gamma*S*rho^(gamma-2)*rho_x", cfg), "momentum-x"});
        rs.add(Relation{makeAtom(SYM_V, {Label::T}),
                        EP("-(u*v_x + v*v_y) - gamma*S*rho^(gamma-2)*rho_y", cfg), "momentum-y"});
    }
    for (const std::string& tag : tags) {
        if (tag == "h-advection") {
            rs.add(Relation{makeAtom(SYM_HE, {Label::T}), EP("-(u*h_x + v*h_y)", cfg),
                            "h-advection"});
        } else if (tag == "psi2-advection") {
            rs.add(Relation{makeAtom(SYM_PSI2E, {Label::T}), EP("-(u*psi2_x + v*psi2_y)", cfg),
                            "psi2-advection"});
        } else if (tag == "psi2-algebraic") {
            // psi2_x S_y - psi2_y S_x = 2 rho S, solved for psi2_y
            rs.add(Relation{makeAtom(SYM_PSI2E, {Label::Y}),
                            (EP("psi2_x*S_y - 2*rho*S", cfg)) / EP("S_x", cfg),
                            "psi2-algebraic"});
        } else {
            throw NlError("unknown relation tag: " + tag);
        }
    }
    return rs;
}

ClawReport verifyEulerianClaw(const ConservedVector& T, const ModelConfig& cfg,
                              const std::vector<std::string>& tags) {
    if (T.frame != Frame::Eulerian)
        throw NlError("verifyEulerianClaw expects an Eulerian-frame vector");
    ClawReport rep;
    Expr div = totalDerivative(T.comp[0], Label::T) + totalDerivative(T.comp[1], Label::X) +
               totalDerivative(T.comp[2], Label::Y);
    Reducer red(eulerianRelations(cfg, tags));
    Expr r = red.reduce(div);
    rep.fired = red.firedRelations();
    if (r.isZero()) {
        rep.conserved = true;
    } else {
        rep.witness = r.leadingTermStr();
    }
    return rep;
}

}  // namespace noetherlab
