/// @file oracle.hpp
/// @brief Numeric cross-checks independent of the symbolic reductions:
///        probabilistic on-shell residual tests and manufactured-solution
///        finite-difference divergence checks.

#ifndef NOETHERLAB_ORACLE_HPP
#define NOETHERLAB_ORACLE_HPP

#include <functional>

#include "noetherlab/euler_map.hpp"

namespace noetherlab {

constexpr uint64_t kDefaultSeed = 12345;
constexpr double kDefaultTol = 1e-9;

/// Deterministic xorshift* generator; the standard distributions are avoided
/// so reports reproduce bit-for-bit.
class OracleRng {
public:
    explicit OracleRng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 0x2545f4914f6cdd1dull;
    }
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }
    /// Uniform on [-2, -1/2] u [1/2, 2].
    double sampleValue() {
        double m = 0.5 + 1.5 * uniform01();
        return (next() & 1) ? m : -m;
    }

private:
    uint64_t s_;
};

struct RandomCheckResult {
    bool pass = false;
    double worstResidual = 0.0;
    int trials = 0;
    uint64_t seed = 0;
    double tol = kDefaultTol;
    std::string failure;  // diagnostic on the first failing trial
};

/// Evaluates the raw (unreduced) expression at random on-shell points: free
/// jet coordinates are sampled from [-2,-1/2] u [1/2,2] with J > 0.1 and
/// rho > 0; atoms bound by the reducer's oriented rules are computed from
/// their fully reduced right-hand sides. Gamma is cycled through
/// {7/5, 5/3, 9/5, 3} plus one uniform draw in (1.1, 3) for symbolic runs.
/// Passes iff every relative residual stays below tol.
RandomCheckResult randomPointCheck(const Expr& raw, Reducer& red, const ModelConfig& cfg,
                                   int trials = 100, double tol = kDefaultTol,
                                   uint64_t seed = kDefaultSeed);

/// Convenience: on-shell divergence residual of a conserved vector.
RandomCheckResult randomPointCheckVector(const ConservedVector& T, const ModelConfig& cfg,
                                         const std::vector<std::string>& relationTags,
                                         int trials = 100, double tol = kDefaultTol,
                                         uint64_t seed = kDefaultSeed);

struct ManufacturedSolution {
    std::string name;
    EntropyMode entropy = EntropyMode::Isentropic;
    Expr phi1, phi2;                      // closed forms over (t, xi, eta)
    Expr entropyS;                        // closed form (parsed per mode)
    std::map<uint16_t, Expr> extras;      // closed forms for h, psi1, psi2, F'...
    double t0 = 0, t1 = 0.5, x0 = 0.5, x1 = 1.5;  // domain box; labels stay positive

    static ManufacturedSolution uniformFlow();
    static ManufacturedSolution dilation();
    static ManufacturedSolution stratifiedRest();   // nonisentropic
    static ManufacturedSolution nonSolution();      // negative control
};

struct CertificateReport {
    bool valid = false;
    std::string witness;
};

/// Symbolic validity certificate: the closed forms satisfy the
/// Euler-Lagrange system (and the psi side relations when supplied).
CertificateReport certifySolution(const ManufacturedSolution& sol, const ModelConfig& cfg);

struct GridSpec {
    std::vector<int> resolutions = {9, 17, 33};  // points per axis
    int stencilOrder = 2;                        // 2 or 4
};

struct ManufacturedReport {
    std::vector<double> norms;    // max-norm FD divergence per resolution
    double observedOrder = 0.0;   // least-squares slope; 0 when machine-zero
    bool machineZero = false;
    bool pass = false;
    std::string detail;
};

/// Finite-difference divergence of the vector evaluated on the manufactured
/// solution over a refinement sequence; reports max-norms and the observed
/// convergence order.
ManufacturedReport manufacturedCheck(const ConservedVector& T, const ManufacturedSolution& sol,
                                     const GridSpec& grid, const ModelConfig& cfg);

}  // namespace noetherlab

#endif
