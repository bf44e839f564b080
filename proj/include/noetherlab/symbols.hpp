/// @file symbols.hpp
/// @brief Symbol registry and atoms (jet variables, labels, function symbols).
///
/// The vocabulary is fixed: the independent labels t, xi, eta (Lagrangian
/// frame) and t, x, y (Eulerian frame); the dependent variables phi1, phi2
/// (Lagrangian) and rho, u, v (Eulerian); the arbitrary elements S, h, psi1,
/// psi2 and the chain family F, F', F'' ... of functions of S; the protected
/// base J; and the classification parameters c1..c10, c10t.
///
/// Names may repeat across frames ("S" exists in both); symbols are distinct
/// and the parser resolves by frame and entropy mode.  In isentropic mode "S"
/// denotes a constant (parameter-kind) symbol.

#ifndef NOETHERLAB_SYMBOLS_HPP
#define NOETHERLAB_SYMBOLS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noetherlab/rational.hpp"

namespace noetherlab {

enum class Label : uint8_t { T = 0, Xi, Eta, X, Y };
constexpr int kNumLabels = 5;

enum class Frame : uint8_t { Lagrangian, Eulerian };
enum class EntropyMode : uint8_t { Isentropic, General };

enum class SymbolKind : uint8_t {
    Label,      // independent variable usable as a factor (t, xi, ...)
    Dependent,  // jet variable (phi1, phi2, rho, u, v)
    Func,       // arbitrary-element function symbol with declared deps
    FuncChain,  // F-family: derivative w.r.t. a label is chainNext * arg_label
    Param,      // constant (c1..c10, isentropic S)
    Protected   // the Jacobian base J
};

/// Symbol ids; order fixes the documented canonical atom order
/// (kind rank, then name, then multi-index).
enum Sym : uint16_t {
    // labels
    SYM_T = 0,
    SYM_XI,
    SYM_ETA,
    SYM_X,
    SYM_Y,
    // Lagrangian dependents
    SYM_PHI1,
    SYM_PHI2,
    // Eulerian dependents
    SYM_RHO,
    SYM_U,
    SYM_V,
    // Lagrangian arbitrary elements
    SYM_S,
    SYM_H,
    SYM_PSI1,
    SYM_PSI2,
    SYM_F0,
    SYM_F1,
    SYM_F2,
    SYM_F3,
    SYM_F4,
    // Eulerian counterparts
    SYM_SE,
    SYM_HE,
    SYM_PSI2E,
    SYM_FE0,
    SYM_FE1,
    SYM_FE2,
    SYM_FE3,
    SYM_FE4,
    // parameters
    SYM_SC,  // isentropic entropy constant, prints "S"
    SYM_C1,
    SYM_C2,
    SYM_C3,
    SYM_C4,
    SYM_C5,
    SYM_C6,
    SYM_C7,
    SYM_C8,
    SYM_C9,
    SYM_C10,
    SYM_C10T,
    // protected base
    SYM_J,
    SYM_COUNT
};

struct SymbolInfo {
    std::string name;                  // grammar/print name
    SymbolKind kind;
    std::optional<Frame> frame;        // nullopt: usable in both frames
    uint8_t deps;                      // bitmask of labels the symbol varies with
    uint16_t chainNext;                // FuncChain: id of next derivative
    uint16_t chainArg;                 // FuncChain: id of the argument symbol
    int orderRank;                     // canonical (kind, name) rank
};

class Registry {
public:
    static const Registry& get();

    const SymbolInfo& info(uint16_t id) const { return table_[id]; }
    bool dependsOn(uint16_t id, Label l) const {
        return (table_[id].deps >> static_cast<int>(l)) & 1;
    }
    /// Resolve a grammar name within a frame/entropy context.
    std::optional<uint16_t> resolve(const std::string& name, Frame frame,
                                    EntropyMode mode) const;

private:
    Registry();
    std::vector<SymbolInfo> table_;
};

inline bool labelIn(uint8_t mask, Label l) {
    return (mask >> static_cast<int>(l)) & 1;
}

constexpr uint8_t depsMask(std::initializer_list<Label> ls) {
    uint8_t m = 0;
    for (Label l : ls) m = static_cast<uint8_t>(m | (1u << static_cast<int>(l)));
    return m;
}

/// Derivative multi-index: count per label. Mixed partials commute, so the
/// count representation is canonical by construction.
using MultiIndex = std::array<uint8_t, kNumLabels>;

inline MultiIndex emptyIndex() { return {0, 0, 0, 0, 0}; }
inline int indexOrder(const MultiIndex& d) {
    int s = 0;
    for (auto v : d) s += v;
    return s;
}
inline MultiIndex indexPlus(MultiIndex d, Label l) {
    d[static_cast<int>(l)]++;
    return d;
}

struct Atom {
    uint16_t sym = SYM_T;
    MultiIndex idx = emptyIndex();

    bool operator==(const Atom& o) const { return sym == o.sym && idx == o.idx; }
    bool operator!=(const Atom& o) const { return !(*this == o); }
};

/// Canonical atom order: (kind rank, name, multi-index), with the label order
/// t < xi < eta < x < y inside multi-indices.
bool atomLess(const Atom& a, const Atom& b);

Atom makeAtom(uint16_t sym);
Atom makeAtom(uint16_t sym, std::initializer_list<Label> derivs);
Atom makeAtom(uint16_t sym, const MultiIndex& idx);

/// Grammar/print spelling, e.g. "phi1_txi", "F''", "S_x".
std::string atomName(const Atom& a);

/// Labels of the frame.
const std::vector<Label>& frameLabels(Frame f);

/// Frame membership for a symbol: nullopt means frame-agnostic.
std::optional<Frame> symbolFrame(uint16_t sym);

}  // namespace noetherlab

#endif
