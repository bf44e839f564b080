#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "noetherlab/jet.hpp"
#include "noetherlab/model.hpp"
#include "test_util.hpp"

using namespace noetherlab;
using nltest::Rng;

static Expr P(const std::string& s) { return parse(s); }
static const JetFrame kLagr = JetFrame::lagrangian();

namespace {

Generator fromText(const std::string& xt, const std::string& xxi, const std::string& xeta,
                   const std::string& e1, const std::string& e2) {
    Generator g;
    g.xi[Label::T] = P(xt);
    g.xi[Label::Xi] = P(xxi);
    g.xi[Label::Eta] = P(xeta);
    g.eta[SYM_PHI1] = P(e1);
    g.eta[SYM_PHI2] = P(e2);
    return g;
}

Generator randomPointGenerator(Rng& rng) {
    Generator g;
    g.xi[Label::T] = nltest::randomPointFunction(rng);
    g.xi[Label::Xi] = nltest::randomPointFunction(rng);
    g.xi[Label::Eta] = nltest::randomPointFunction(rng);
    g.eta[SYM_PHI1] = nltest::randomPointFunction(rng);
    g.eta[SYM_PHI2] = nltest::randomPointFunction(rng);
    return g;
}

}  // namespace

TEST_CASE("total derivative: first jets and constants") {
    CHECK(canonicalEq(totalDerivative(P("phi1"), Label::Xi), P("phi1_xi")));
    CHECK(totalDerivative(P("S"), Label::T).isZero());  // S = S(xi, eta)
    CHECK(canonicalEq(totalDerivative(P("t*xi"), Label::T), P("xi")));
    CHECK(canonicalEq(totalDerivative(P("F'"), Label::Xi), P("F''*S_xi")));
    CHECK_THROWS_AS(totalDerivative(P("phi1"), Label::X), NlError);
}

TEST_CASE("total derivative of J is the hand product rule") {
    Expr dJ = totalDerivative(P("J"), Label::T);
    Expr oracle =
        P("phi1_txi*phi2_eta + phi1_xi*phi2_teta - phi1_teta*phi2_xi - phi1_eta*phi2_txi");
    CHECK(canonicalEq(dJ, oracle));
}

TEST_CASE("total derivative of symbolic J powers") {
    Expr e = totalDerivative(P("J^(-gamma)"), Label::Xi);
    Expr oracle =
        P("-gamma*J^(-gamma-1)") *
        P("phi1_xixi*phi2_eta + phi1_xi*phi2_xieta - phi1_xieta*phi2_xi - phi1_eta*phi2_xixi");
    CHECK(canonicalEq(e, oracle));
}

TEST_CASE("property: total derivatives commute") {
    Rng rng(7);
    for (int i = 0; i < 60; ++i) {
        Expr e = nltest::randomExpr(rng, 2);
        Expr a = totalDerivative(totalDerivative(e, Label::T), Label::Xi);
        Expr b = totalDerivative(totalDerivative(e, Label::Xi), Label::T);
        CHECK(canonicalEq(a, b));
    }
}

TEST_CASE("variational derivative annihilates total divergences") {
    Rng rng(13);
    for (int i = 0; i < 40; ++i) {
        Expr A = nltest::randomExpr(rng, 1), B = nltest::randomExpr(rng, 1),
             C = nltest::randomExpr(rng, 1);
        Expr div = totalDerivative(A, Label::T) + totalDerivative(B, Label::Xi) +
                   totalDerivative(C, Label::Eta);
        CHECK(variationalDerivative(div, SYM_PHI1, kLagr).isZero());
        CHECK(variationalDerivative(div, SYM_PHI2, kLagr).isZero());
    }
}

TEST_CASE("one-term Euler operator") {
    CHECK(canonicalEq(variationalDerivative(P("phi1_t^2/2"), SYM_PHI1, kLagr), P("-phi1_tt")));
    CHECK(variationalDerivative(totalDerivative(P("phi1^2*S"), Label::Xi), SYM_PHI1, kLagr)
              .isZero());
}

TEST_CASE("variational derivative of the Lagrangian has phi_tt coefficient -1") {
    ModelConfig cfg;
    Expr L = buildLagrangian(cfg);
    Expr d1 = variationalDerivative(L, SYM_PHI1, kLagr);
    CHECK(canonicalEq(partialAtom(d1, makeAtom(SYM_PHI1, {Label::T, Label::T})), P("-1")));
    // frozen hand oracle for the full variational derivative
    Expr oracle = P("-phi1_tt - J^(-gamma)*(S_xi*phi2_eta - S_eta*phi2_xi)") +
                  P("gamma*S*J^(-gamma-1)") *
                      (totalDerivative(P("J"), Label::Xi) * P("phi2_eta") -
                       totalDerivative(P("J"), Label::Eta) * P("phi2_xi"));
    CHECK(canonicalEq(d1, oracle));
}

TEST_CASE("characteristics") {
    Generator X1 = fromText("0", "0", "0", "1", "0");
    CHECK(canonicalEq(characteristic(X1, SYM_PHI1, kLagr), P("1")));
    CHECK(characteristic(X1, SYM_PHI2, kLagr).isZero());

    Generator X6 = fromText("1", "0", "0", "0", "0");
    CHECK(canonicalEq(characteristic(X6, SYM_PHI1, kLagr), P("-phi1_t")));
    CHECK(canonicalEq(characteristic(X6, SYM_PHI2, kLagr), P("-phi2_t")));

    Generator X5 = fromText("0", "0", "0", "phi2", "-phi1");
    CHECK(canonicalEq(characteristic(X5, SYM_PHI1, kLagr), P("phi2")));
    CHECK(canonicalEq(characteristic(X5, SYM_PHI2, kLagr), P("-phi1")));
}

TEST_CASE("prolongation: X3 = t d/dphi1") {
    Generator X3 = fromText("0", "0", "0", "t", "0");
    auto tab = prolong(X3, kLagr, 1);
    CHECK(canonicalEq(tab.at(makeAtom(SYM_PHI1, {Label::T})), P("1")));
    CHECK(tab.at(makeAtom(SYM_PHI1, {Label::Xi})).isZero());
    CHECK(tab.at(makeAtom(SYM_PHI2, {Label::T})).isZero());
}

TEST_CASE("prolongation: projective generator") {
    Generator X7 = fromText("t^2", "0", "0", "t*phi1", "t*phi2");
    auto tab = prolong(X7, kLagr, 2);
    CHECK(canonicalEq(tab.at(makeAtom(SYM_PHI1, {Label::T})), P("phi1 - t*phi1_t")));
    CHECK(canonicalEq(tab.at(makeAtom(SYM_PHI1, {Label::Xi})), P("t*phi1_xi")));
}

TEST_CASE("prolongation: area-preserving relabeling family") {
    Generator Xh = fromText("0", "-h_eta", "h_xi", "0", "0");
    auto tab = prolong(Xh, kLagr, 1);
    CHECK(canonicalEq(tab.at(makeAtom(SYM_PHI1, {Label::Xi})),
                      P("phi1_xi*h_etaxi - phi1_eta*h_xixi")));
    CHECK(prolong(fromText("0", "0", "0", "0", "0"), kLagr, 1)
              .at(makeAtom(SYM_PHI1, {Label::T}))
              .isZero());
    CHECK_THROWS_AS(prolong(Xh, kLagr, 3), NlError);
}

TEST_CASE("Noether operator on the Lagrangian: translation generators") {
    ModelConfig cfg;
    Expr L = buildLagrangian(cfg);
    Generator X1 = fromText("0", "0", "0", "1", "0");
    CHECK(canonicalEq(noetherOperator(X1, L, Label::T, kLagr), P("phi1_t")));
    CHECK(canonicalEq(noetherOperator(X1, L, Label::Xi, kLagr), P("S*phi2_eta*J^(-gamma)")));
    CHECK(canonicalEq(noetherOperator(X1, L, Label::Eta, kLagr), P("-S*phi2_xi*J^(-gamma)")));

    Generator X6 = fromText("1", "0", "0", "0", "0");
    CHECK(canonicalEq(noetherOperator(X6, L, Label::T, kLagr), L - P("phi1_t^2 + phi2_t^2")));

    Generator X0 = fromText("0", "0", "0", "0", "0");
    CHECK(noetherOperator(X0, L, Label::T, kLagr).isZero());
}

TEST_CASE("property: Noether identity for randomized first-order inputs") {
    Rng rng(101);
    for (int i = 0; i < 25; ++i) {
        Generator X = randomPointGenerator(rng);
        Expr F = nltest::randomExpr(rng, 1);
        Expr lhs = applyGenerator(X, F, kLagr) + F * xiDivergence(X, kLagr);
        Expr rhs = Expr::zero();
        for (uint16_t dep : kLagr.dependents)
            rhs += characteristic(X, dep, kLagr) * variationalDerivative(F, dep, kLagr);
        for (Label l : {Label::T, Label::Xi, Label::Eta})
            rhs += totalDerivative(noetherOperator(X, F, l, kLagr), l);
        CHECK((lhs - rhs).isZero());
    }
}

TEST_CASE("property: Noether identity for second-order F") {
    Rng rng(103);
    for (int i = 0; i < 10; ++i) {
        Generator X = randomPointGenerator(rng);
        Expr F = nltest::randomExpr(rng, 2, false);
        Expr lhs = applyGenerator(X, F, kLagr) + F * xiDivergence(X, kLagr);
        Expr rhs = Expr::zero();
        for (uint16_t dep : kLagr.dependents)
            rhs += characteristic(X, dep, kLagr) * variationalDerivative(F, dep, kLagr);
        for (Label l : {Label::T, Label::Xi, Label::Eta})
            rhs += totalDerivative(noetherOperator(X, F, l, kLagr), l);
        CHECK((lhs - rhs).isZero());
    }
}

TEST_CASE("generator coefficient validation") {
    Generator bad = fromText("phi1_t", "0", "0", "0", "0");
    CHECK_THROWS_AS(bad.validatePointCoefficients(), NlError);
    Generator ok = fromText("t", "-h_eta", "h_xi", "phi2", "-phi1");
    CHECK_NOTHROW(ok.validatePointCoefficients());
}

TEST_CASE("commutators") {
    Generator X8 = fromText("gamma*t", "0", "0", "phi1", "phi2");
    Generator X9 = fromText("0", "2*gamma*xi", "0", "(gamma-1)*phi1", "(gamma-1)*phi2");
    CHECK(commutator(X8, X9, kLagr).isZero());

    Generator X6 = fromText("1", "0", "0", "0", "0");
    Generator X3 = fromText("0", "0", "0", "t", "0");
    Generator C2 = commutator(X6, X3, kLagr);  // = d/dphi1
    CHECK(canonicalEq(C2.etaOf(SYM_PHI1), P("1")));
    CHECK(C2.xiOf(Label::T).isZero());
}
