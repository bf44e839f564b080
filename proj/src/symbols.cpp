#include "noetherlab/symbols.hpp"

#include <algorithm>
#include <map>

namespace noetherlab {

namespace {
constexpr uint8_t kLagrAll = depsMask({Label::T, Label::Xi, Label::Eta});
constexpr uint8_t kLagrSpace = depsMask({Label::Xi, Label::Eta});
constexpr uint8_t kEulerAll = depsMask({Label::T, Label::X, Label::Y});
}  // namespace

Registry::Registry() {
    table_.resize(SYM_COUNT);
    auto set = [&](uint16_t id, std::string name, SymbolKind kind, std::optional<Frame> frame,
                   uint8_t deps = 0, uint16_t chainNext = SYM_COUNT,
                   uint16_t chainArg = SYM_COUNT) {
        table_[id] = SymbolInfo{std::move(name), kind, frame, deps, chainNext, chainArg, 0};
    };

    set(SYM_T, "t", SymbolKind::Label, std::nullopt);
    set(SYM_XI, "xi", SymbolKind::Label, Frame::Lagrangian);
    set(SYM_ETA, "eta", SymbolKind::Label, Frame::Lagrangian);
    set(SYM_X, "x", SymbolKind::Label, Frame::Eulerian);
    set(SYM_Y, "y", SymbolKind::Label, Frame::Eulerian);

    set(SYM_PHI1, "phi1", SymbolKind::Dependent, Frame::Lagrangian, kLagrAll);
    set(SYM_PHI2, "phi2", SymbolKind::Dependent, Frame::Lagrangian, kLagrAll);
    set(SYM_RHO, "rho", SymbolKind::Dependent, Frame::Eulerian, kEulerAll);
    set(SYM_U, "u", SymbolKind::Dependent, Frame::Eulerian, kEulerAll);
    set(SYM_V, "v", SymbolKind::Dependent, Frame::Eulerian, kEulerAll);

    set(SYM_S, "S", SymbolKind::Func, Frame::Lagrangian, kLagrSpace);
    set(SYM_H, "h", SymbolKind::Func, Frame::Lagrangian, kLagrSpace);
    set(SYM_PSI1, "psi1", SymbolKind::Func, Frame::Lagrangian, kLagrSpace);
    set(SYM_PSI2, "psi2", SymbolKind::Func, Frame::Lagrangian, kLagrSpace);
    set(SYM_F0, "F", SymbolKind::FuncChain, Frame::Lagrangian, kLagrSpace, SYM_F1, SYM_S);
    set(SYM_F1, "F'", SymbolKind::FuncChain, Frame::Lagrangian, kLagrSpace, SYM_F2, SYM_S);
    set(SYM_F2, "F''", SymbolKind::FuncChain, Frame::Lagrangian, kLagrSpace, SYM_F3, SYM_S);
    set(SYM_F3, "F'''", SymbolKind::FuncChain, Frame::Lagrangian, kLagrSpace, SYM_F4, SYM_S);
    set(SYM_F4, "F''''", SymbolKind::FuncChain, Frame::Lagrangian, kLagrSpace, SYM_COUNT, SYM_S);

    set(SYM_SE, "S", SymbolKind::Func, Frame::Eulerian, kEulerAll);
    set(SYM_HE, "h", SymbolKind::Func, Frame::Eulerian, kEulerAll);
    set(SYM_PSI2E, "psi2", SymbolKind::Func, Frame::Eulerian, kEulerAll);
    set(SYM_FE0, "F", SymbolKind::FuncChain, Frame::Eulerian, kEulerAll, SYM_FE1, SYM_SE);
    set(SYM_FE1, "F'", SymbolKind::FuncChain, Frame::Eulerian, kEulerAll, SYM_FE2, SYM_SE);
    set(SYM_FE2, "F''", SymbolKind::FuncChain, Frame::Eulerian, kEulerAll, SYM_FE3, SYM_SE);
    set(SYM_FE3, "F'''", SymbolKind::FuncChain, Frame::Eulerian, kEulerAll, SYM_FE4, SYM_SE);
    set(SYM_FE4, "F''''", SymbolKind::FuncChain, Frame::Eulerian, kEulerAll, SYM_COUNT, SYM_SE);

    set(SYM_SC, "S", SymbolKind::Param, std::nullopt);
    const char* cs[] = {"c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9", "c10", "c10t"};
    for (int i = 0; i < 11; ++i)
        set(static_cast<uint16_t>(SYM_C1 + i), cs[i], SymbolKind::Param, std::nullopt);

    set(SYM_J, "J", SymbolKind::Protected, Frame::Lagrangian);

    // canonical (kind, name) rank
    std::vector<uint16_t> ids(SYM_COUNT);
    for (uint16_t i = 0; i < SYM_COUNT; ++i) ids[i] = i;
    std::sort(ids.begin(), ids.end(), [&](uint16_t a, uint16_t b) {
        if (table_[a].kind != table_[b].kind) return table_[a].kind < table_[b].kind;
        if (table_[a].name != table_[b].name) return table_[a].name < table_[b].name;
        return a < b;
    });
    for (int r = 0; r < SYM_COUNT; ++r) table_[ids[r]].orderRank = r;
}

const Registry& Registry::get() {
    static const Registry reg;
    return reg;
}

std::optional<uint16_t> Registry::resolve(const std::string& name, Frame frame,
                                          EntropyMode mode) const {
    // isentropic "S" is the constant parameter in the Lagrangian frame;
    // everything else resolves by (name, frame), with frame-agnostic symbols
    // visible from both frames.
    if (name == "S" && mode == EntropyMode::Isentropic) return SYM_SC;
    uint16_t fallback = SYM_COUNT;
    for (uint16_t i = 0; i < SYM_COUNT; ++i) {
        if (table_[i].name != name) continue;
        if (i == SYM_SC) continue;  // only reachable via the isentropic rule
        if (!table_[i].frame) fallback = i;
        else if (*table_[i].frame == frame)
            return i;
    }
    if (fallback != SYM_COUNT) return fallback;
    return std::nullopt;
}

bool atomLess(const Atom& a, const Atom& b) {
    const Registry& reg = Registry::get();
    int ra = reg.info(a.sym).orderRank, rb = reg.info(b.sym).orderRank;
    if (ra != rb) return ra < rb;
    return a.idx < b.idx;
}

Atom makeAtom(uint16_t sym) { return Atom{sym, emptyIndex()}; }

Atom makeAtom(uint16_t sym, std::initializer_list<Label> derivs) {
    Atom a{sym, emptyIndex()};
    for (Label l : derivs) a.idx[static_cast<int>(l)]++;
    return a;
}

Atom makeAtom(uint16_t sym, const MultiIndex& idx) { return Atom{sym, idx}; }

std::string atomName(const Atom& a) {
    static const char* labelNames[kNumLabels] = {"t", "xi", "eta", "x", "y"};
    std::string s = Registry::get().info(a.sym).name;
    if (indexOrder(a.idx) > 0) {
        s += "_";
        for (int l = 0; l < kNumLabels; ++l)
            for (int k = 0; k < a.idx[l]; ++k) s += labelNames[l];
    }
    return s;
}

const std::vector<Label>& frameLabels(Frame f) {
    static const std::vector<Label> lagr = {Label::T, Label::Xi, Label::Eta};
    static const std::vector<Label> euler = {Label::T, Label::X, Label::Y};
    return f == Frame::Lagrangian ? lagr : euler;
}

std::optional<Frame> symbolFrame(uint16_t sym) { return Registry::get().info(sym).frame; }

}  // namespace noetherlab
