/// @file parser.hpp
/// @brief Text grammar for expressions. The printer in expr.cpp emits the
///        same grammar, and parse(print(e)) is canonically equal to e.
///
/// EBNF (whitespace insignificant):
///
///   expr     = term { ("+" | "-") term } ;
///   term     = unary { ("*" | "/") unary } ;
///   unary    = "-" unary | power ;
///   power    = primary [ "^" exponent ] ;
///   primary  = integer | "gamma" | name | "(" expr ")" ;
///   exponent = [ "-" ] ( integer | "gamma" | name | "(" expr ")" ) ;
///   name     = letter { letter | digit } { "'" } [ "_" indices ] ;
///   indices  = label { label } ;          (* greedy, frame label names *)
///
/// An exponent must evaluate to a coefficient affine in gamma. Derivative
/// indices concatenate label names, e.g. phi1_txi, S_xieta, psi2_y. Rationals
/// are written with the division operator (1/2). Names resolve against the
/// symbol registry for the requested frame and entropy mode; "S" denotes the
/// constant entropy parameter in isentropic mode.

#ifndef NOETHERLAB_PARSER_HPP
#define NOETHERLAB_PARSER_HPP

#include <string>

#include "noetherlab/expr.hpp"

namespace noetherlab {

Expr parse(const std::string& text, Frame frame = Frame::Lagrangian,
           EntropyMode mode = EntropyMode::General);

}  // namespace noetherlab

#endif
