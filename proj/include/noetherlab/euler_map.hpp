/// @file euler_map.hpp
/// @brief Transforms Lagrangian-frame conserved vectors to Eulerian form and
///        verifies Eulerian conservation laws against the gas-dynamics
///        system.

#ifndef NOETHERLAB_EULER_MAP_HPP
#define NOETHERLAB_EULER_MAP_HPP

#include "noetherlab/noether.hpp"

namespace noetherlab {

/// Oriented substitution rules carrying a Lagrangian first-order vector into
/// Eulerian variables: velocities, positions, and the chain rules for the
/// advected function symbols.
std::vector<std::pair<Atom, Expr>> frameDictionary(const ModelConfig& cfg);

struct MapResult {
    bool mapped = false;
    ConservedVector image;                  // valid when mapped
    std::vector<std::string> witnesses;     // surviving Lagrangian atoms otherwise
};

/// Applies the frame formulas  eT^t = rho T^t,
/// T^x = rho u T^t + (phi1_xi T^xi + phi1_eta T^eta)/J,
/// T^y = rho v T^t + (phi2_xi T^xi + phi2_eta T^eta)/J,
/// then the dictionary, then cancels the deformation-gradient residue
/// through the determinant identity. Succeeds iff no Lagrangian atom
/// survives.
MapResult toEulerian(const ConservedVector& T, const ModelConfig& cfg);

/// Eulerian evolution rules (density, momentum, entropy advection) plus the
/// requested side relations: "h-advection", "psi2-advection",
/// "psi2-algebraic". The algebraic rule divides by S_x (ledger-recorded).
RelationSet eulerianRelations(const ModelConfig& cfg, const std::vector<std::string>& tags);

/// On-shell divergence check in the Eulerian frame.
ClawReport verifyEulerianClaw(const ConservedVector& T, const ModelConfig& cfg,
                              const std::vector<std::string>& tags);

}  // namespace noetherlab

#endif
