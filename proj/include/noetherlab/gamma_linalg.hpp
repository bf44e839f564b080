/// @file gamma_linalg.hpp
/// @brief Exact row reduction over Q(gamma) for constraint extraction and
///        span-membership checks.

#ifndef NOETHERLAB_GAMMA_LINALG_HPP
#define NOETHERLAB_GAMMA_LINALG_HPP

#include <optional>
#include <vector>

#include "noetherlab/rational.hpp"

namespace noetherlab {

using GammaRow = std::vector<GammaRat>;

/// Reduced row echelon form; returns the nonzero rows (each with leading 1).
inline std::vector<GammaRow> rowReduce(std::vector<GammaRow> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c].isZero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        GammaRat inv = rows[r][c].inverse();
        for (auto& x : rows[r]) x = x * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].isZero()) continue;
            GammaRat f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

/// Solves sum_k x_k a_k = b exactly; nullopt when inconsistent.
inline std::optional<std::vector<GammaRat>> solveLinear(
    const std::vector<GammaRow>& columnsA, const GammaRow& b) {
    // build augmented rows: one per equation
    const std::size_t n = columnsA.size();
    const std::size_t m = b.size();
    std::vector<GammaRow> rows(m, GammaRow(n + 1, GammaRat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n; ++k) rows[i][k] = columnsA[k][i];
        rows[i][n] = b[i];
    }
    auto rr = rowReduce(std::move(rows));
    // particular solution with the free variables set to zero
    std::vector<GammaRat> x(n, GammaRat(0));
    for (const auto& row : rr) {
        std::size_t lead = 0;
        while (lead < n + 1 && row[lead].isZero()) ++lead;
        if (lead == n) return std::nullopt;  // 0 = nonzero: inconsistent
        if (lead == n + 1) continue;
        x[lead] = row[n];
    }
    return x;
}

}  // namespace noetherlab

#endif
