/// @file model.hpp
/// @brief The gas-dynamics variational model: Lagrangian, Euler-Lagrange
///        system, oriented side relations, and on-shell reduction.

#ifndef NOETHERLAB_MODEL_HPP
#define NOETHERLAB_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "noetherlab/jet.hpp"
#include "noetherlab/parser.hpp"

namespace noetherlab {

struct ModelConfig {
    /// nullopt = symbolic gamma; otherwise an exact rational > 1.
    std::optional<Rational> gamma;
    EntropyMode entropy = EntropyMode::General;

    bool isSymbolic() const { return !gamma.has_value(); }
    bool gammaEquals(const Rational& r) const { return gamma && *gamma == r; }
    void validate() const;
    std::string str() const;
};

/// Parse in the Lagrangian frame under the config's entropy mode, then
/// specialize gamma when the config pins it.
Expr parseModel(const std::string& text, const ModelConfig& cfg,
                Frame frame = Frame::Lagrangian);

/// L = (phi1_t^2 + phi2_t^2)/2 - J^(1-gamma) S / (gamma - 1).
Expr buildLagrangian(const ModelConfig& cfg);

struct ELSystem {
    ModelConfig cfg;
    Expr E1, E2;                    // printed left-hand sides
    Expr phi1tt_rhs, phi2tt_rhs;    // solved forms
    Expr lagrangian;
};

/// Builds the printed system and the solved forms. The E_i are affine in
/// phi_ktt with coefficient J^gamma; -J^gamma * dL/dphi_k reproduces them.
ELSystem eulerLagrange(const ModelConfig& cfg);

/// One oriented side relation: any atom whose multi-index dominates `base`'s
/// rewrites through the total-derivative consequence of `rhs`.
struct Relation {
    Atom base;
    Expr rhs;
    std::string name;
};

struct RelationSet {
    std::vector<Relation> relations;
    void add(Relation r) { relations.push_back(std::move(r)); }
    static RelationSet none() { return {}; }
};

/// Lagrangian side relations for psi1, psi2 solved for the eta-derivatives
/// (divides by S_xi; recorded in the ledger).
RelationSet psiRelations(const ModelConfig& cfg);

/// Rewrites bound atoms to their fully reduced right-hand sides, generating
/// total-derivative consequences on demand (memoized). Reduction is
/// simultaneous, so one pass suffices once the memo is complete.
class Reducer {
public:
    Reducer(const ELSystem* sys, RelationSet rels);
    explicit Reducer(RelationSet rels) : Reducer(nullptr, std::move(rels)) {}

    Expr reduce(const Expr& e);
    const std::vector<std::string>& firedRelations() const { return fired_; }
    /// Rule lookup for samplers: nullptr when the atom is free.
    const Relation* matchRule(const Atom& a) const { return match(a); }
    /// Fully reduced right-hand side for a bound atom.
    Expr reducedRhs(const Atom& a, const Relation& r) { return ruleFor(a, r); }

private:
    std::vector<Relation> rules_;
    std::map<Atom, Expr, AtomCmp> memo_;
    std::vector<std::string> fired_;
    int depth_ = 0;

    const Relation* match(const Atom& a) const;
    Expr ruleFor(const Atom& a, const Relation& r);
};

/// Substitutes the solved phi_ktt forms and the oriented relations, then
/// canonicalizes.
Expr onShellReduce(const Expr& e, const ELSystem& sys, const RelationSet& rels);

struct ResidualReport {
    struct Item {
        std::string name;
        bool zero;
        std::string witness;
    };
    std::vector<Item> items;
    bool allZero() const {
        for (const auto& i : items)
            if (!i.zero) return false;
        return true;
    }
};

/// Consistency of the variational system with the gas-dynamics form:
/// (a) the J_t identity, (b) J^gamma x momentum equations vs the E_i,
/// (c) the one-dimensional reduction.
ResidualReport verifyGdConsistency(const ModelConfig& cfg);

}  // namespace noetherlab

#endif
