/// @file noether.hpp
/// @brief Divergence-symmetry testing, conserved-vector construction, and
///        on-shell conservation-law verification.

#ifndef NOETHERLAB_NOETHER_HPP
#define NOETHERLAB_NOETHER_HPP

#include "noetherlab/catalog.hpp"

namespace noetherlab {

struct DivergenceCertificate {
    Expr Bt, Bxi, Beta;  // B = (b(t, xi, eta, phi1, phi2), 0, 0) throughout
    bool isZero() const { return Bt.num().isZero() && Bxi.num().isZero() && Beta.num().isZero(); }
};

struct CertificateResult {
    bool accepted = false;
    DivergenceCertificate cert;
    std::string witness;  // nonvanishing variational derivative on rejection
};

/// Tests the divergence-symmetry condition for a point generator. With a
/// certificate supplied, verifies it exactly. Without one, applies the
/// variational-derivative test (necessary and sufficient) and reconstructs
/// the density b with B = (b, 0, 0). Side relations (the psi rules in general
/// entropy mode) are applied before testing.
CertificateResult divergenceSymmetryTest(const Generator& X, const Expr& L,
                                         const ModelConfig& cfg,
                                         const DivergenceCertificate* provided = nullptr);

/// Componentwise N^i(L) - B^i. The certificate must have been accepted.
ConservedVector buildConservedVector(const Generator& X, const Expr& L,
                                     const DivergenceCertificate& cert);

/// Finds sigma in Q(gamma) with  built = sigma * printed componentwise.
std::optional<GammaRat> matchScale(const ConservedVector& built, const ConservedVector& printed);

struct ClawReport {
    bool conserved = false;
    std::string witness;
    std::vector<std::string> fired;
};

/// On-shell divergence check for a Lagrangian-frame vector.
ClawReport verifyConservationLaw(const ConservedVector& T, const ELSystem& sys,
                                 const RelationSet& rels);

struct GateReport {
    bool consistent = false;          // the emitted set matches the expected entry
    std::vector<Expr> constraints;    // polynomial conditions on the c's
    std::optional<Expr> bDensity;     // reconstructed certificate density
    std::string detail;
};

/// Divergence-symmetry gate on the general admitted combination with symbolic
/// coefficients: emits the solvability conditions on the c's, reconstructs
/// the certificate density, and compares both against the catalog.
GateReport divergenceGate(const Catalog& cat, const ModelConfig& cfg);

}  // namespace noetherlab

#endif
