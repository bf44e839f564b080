/// @file catalog.hpp
/// @brief Machine-readable catalog of generators, conserved vectors,
///        equivalence generators, and coefficient constraints, each tagged
///        with applicability conditions. Loaded from the bundled data file
///        (or an external one) and parsed per run configuration.

#ifndef NOETHERLAB_CATALOG_HPP
#define NOETHERLAB_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "noetherlab/model.hpp"

namespace noetherlab {

struct ConservedVector {
    Frame frame = Frame::Lagrangian;
    std::array<Expr, 3> comp;  // (T^t, T^xi, T^eta) or (T^t, T^x, T^y)
};

struct CatalogEntry {
    std::string id;
    std::string kind;  // generator | conserved-vector | equivalence-generator | constraint
    Frame frame = Frame::Lagrangian;
    std::string entropyTag;  // any | isentropic | general | none
    std::string gammaTag;    // any | 2
    std::string label;
    std::map<std::string, std::string> fields;

    bool applicable(const ModelConfig& cfg) const;
    bool isCombination() const { return fields.count("combination") != 0; }
    bool has(const std::string& key) const { return fields.count(key) != 0; }
    std::string field(const std::string& key) const;

    Generator generator(const ModelConfig& cfg) const;
    std::optional<Generator> altGenerator(const ModelConfig& cfg) const;
    ConservedVector vector(const ModelConfig& cfg) const;
    std::optional<ConservedVector> altVector(const ModelConfig& cfg) const;
    Expr certificateDensity(const ModelConfig& cfg) const;  // B_t (zero when absent)
    GammaRat noetherScale(const ModelConfig& cfg) const;
    GammaRat mapScale(const ModelConfig& cfg) const;
    Expr constraintExpr(const ModelConfig& cfg) const;
    std::vector<std::string> relationTags() const;
};

class Catalog {
public:
    /// Loads the bundled catalog.
    static const Catalog& bundled();
    /// Parses catalog text (documented key-value schema).
    static Catalog fromText(const std::string& text);
    static Catalog fromFile(const std::string& path);

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(const std::string& id) const;
    const CatalogEntry& at(const std::string& id) const;

    /// The admitted generator set for the configuration (basis entries only;
    /// divergence-symmetry combinations are reachable through noetherSources).
    std::vector<const CatalogEntry*> generators(const ModelConfig& cfg) const;
    /// Every applicable generator carrying a conservation link.
    std::vector<const CatalogEntry*> noetherSources(const ModelConfig& cfg) const;
    std::vector<const CatalogEntry*> conservedVectors(const ModelConfig& cfg) const;
    std::vector<const CatalogEntry*> eulerianVectors(const ModelConfig& cfg) const;
    std::vector<const CatalogEntry*> equivalenceGenerators(const ModelConfig& cfg) const;

private:
    std::vector<CatalogEntry> entries_;
};

struct AdmittedReport {
    bool admitted = false;
    std::string witness;           // leading term of the first nonzero residual
    std::vector<std::string> fired;
};

/// Determining-equation check: the prolonged generator applied to the system,
/// reduced on the solution manifold (with the psi side relations in general
/// entropy mode), must vanish. Equivalence generators are checked with S
/// prolonged as a dependent on (xi, eta).
AdmittedReport verifyAdmitted(const CatalogEntry& entry, const ModelConfig& cfg);
AdmittedReport verifyAdmittedGenerator(const Generator& X, bool equivalence,
                                       const ModelConfig& cfg);

struct ClassifyingReport {
    bool ok = false;
    bool multiplierNonzero1 = false, multiplierNonzero2 = false;
    bool obstructionPresent = false;   // residual d/dc7 is nonzero ...
    bool obstructionVanishesAt2 = false;  // ... and vanishes exactly at gamma 2
    std::string detail;
};

/// For the general combination sum c_j X_j + X_h with symbolic coefficients:
/// the on-shell determining residual decomposes as (multiplier) x
/// (classifying expression) + c7 x (obstruction term), the multiplier is
/// nonzero, and the obstruction vanishes exactly at gamma = 2.
ClassifyingReport verifyClassifying(const Catalog& cat, const ModelConfig& cfg);

struct CommutatorReport {
    bool closed = true;
    std::vector<std::string> failures;
};

/// Pairwise commutators of the admitted finite generators lie in the span of
/// the finite basis plus the relabeling family.
CommutatorReport commutatorClosure(const Catalog& cat, const ModelConfig& cfg);

}  // namespace noetherlab

#endif
