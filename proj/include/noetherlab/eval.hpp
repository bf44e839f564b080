/// @file eval.hpp
/// @brief IEEE double evaluation of expressions at a point assignment.

#ifndef NOETHERLAB_EVAL_HPP
#define NOETHERLAB_EVAL_HPP

#include <map>
#include <string>

#include "noetherlab/expr.hpp"

namespace noetherlab {

struct AtomCmp {
    bool operator()(const Atom& a, const Atom& b) const { return atomLess(a, b); }
};

using Assignment = std::map<Atom, double, AtomCmp>;

struct EvalResult {
    double value = 0.0;
    double scale = 0.0;  // largest evaluated term magnitude
};

/// Evaluates e at the assignment. The protected base J is computed from the
/// four first-order phi jets. Missing atoms, zero denominators, and
/// ledger-excluded gamma values raise EvalError/ExcludedValueError.
EvalResult evalNumeric(const Expr& e, const Assignment& a, double gamma);

}  // namespace noetherlab

#endif
