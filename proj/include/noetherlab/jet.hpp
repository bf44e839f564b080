/// @file jet.hpp
/// @brief Jet-space calculus: total derivatives, variational derivatives,
///        prolongation, characteristics, and the Noether operator.

#ifndef NOETHERLAB_JET_HPP
#define NOETHERLAB_JET_HPP

#include <map>
#include <vector>

#include "noetherlab/eval.hpp"
#include "noetherlab/expr.hpp"

namespace noetherlab {

/// A jet frame: the independent labels plus the dependents that get
/// prolonged. Arbitrary-element function symbols (S, h, psi1, psi2, F...)
/// differentiate through their declared dependencies but are not prolonged
/// unless listed as dependents (the equivalence-group check lists S).
struct JetFrame {
    Frame frame = Frame::Lagrangian;
    std::vector<uint16_t> dependents;

    static JetFrame lagrangian();             // phi1, phi2 over (t, xi, eta)
    static JetFrame lagrangianEquivalence();  // phi1, phi2, and S(xi, eta)
    static JetFrame eulerian();               // rho, u, v, S over (t, x, y)

    bool isDependent(uint16_t sym) const;
    /// Labels the dependent actually varies with (S varies with xi, eta only).
    std::vector<Label> dependentLabels(uint16_t dep) const;
};

/// Total derivative D_label. Function atoms differentiate through their
/// dependencies (D_xi F(S) = F' * S_xi); D_t S = 0 in the Lagrangian frame.
Expr totalDerivative(const Expr& e, Label l);
Expr totalDerivative(const Expr& e, const MultiIndex& idx);

/// Explicit label partial: like the total derivative but with the frame's
/// dependents (and J) frozen. Used when applying point generators.
Expr partialExplicit(const Expr& e, Label l, const JetFrame& fr);

/// Variational (Euler) operator delta/delta u, truncated at the highest jet
/// order present in the argument.
Expr variationalDerivative(const Expr& e, uint16_t dep, const JetFrame& fr);

/// Point generator: coefficients on the labels and on the dependents.
/// Coefficients must be point functions (no jet atoms of order >= 1, no J).
struct Generator {
    std::map<Label, Expr> xi;
    std::map<uint16_t, Expr> eta;

    Expr xiOf(Label l) const;
    Expr etaOf(uint16_t dep) const;
    bool isZero() const;
    Generator operator+(const Generator& o) const;
    Generator scaled(const Expr& c) const;
    void validatePointCoefficients() const;
};

/// Characteristic W^k = eta^k - xi^i u_i^k.
Expr characteristic(const Generator& X, uint16_t dep, const JetFrame& fr);

/// Prolonged coefficient table up to the requested order (1 or 2), keyed by
/// jet atom: zeta_J = D_J(W) + xi^l u_{J+l}.
std::map<Atom, Expr, AtomCmp> prolong(const Generator& X, const JetFrame& fr, int order);

/// Apply the prolonged generator to an expression of jet order <= 2.
Expr applyGenerator(const Generator& X, const Expr& F, const JetFrame& fr);

/// Divergence of the generator's label coefficients, D_i xi^i.
Expr xiDivergence(const Generator& X, const JetFrame& fr);

/// Noether operator component N^i F for F of jet order <= 2 (first-order
/// suffices for the Lagrangian; the order-2 case uses symmetrized partials).
Expr noetherOperator(const Generator& X, const Expr& F, Label i, const JetFrame& fr);

/// Commutator of point generators, coefficient-wise X(Y^a) - Y(X^a).
Generator commutator(const Generator& X, const Generator& Y, const JetFrame& fr);

}  // namespace noetherlab

#endif
