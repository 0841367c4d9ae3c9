#pragma once

#include <string>
#include <string_view>

#include "qfinv/field.hpp"
#include "qfinv/laurent.hpp"
#include "qfinv/tower.hpp"

namespace qfinv {

// Descriptor grammar (whitespace is insignificant):
//
//   field      := "algclosed" | "finite(" INT ")" | "custom(r=" INT ",hyp=" BOOL ")"
//               | "laurent(" field ")" | "ratfn(" field ")" | "semiglobal(" field ";" model ")"
//   model      := "{" entry ("," entry)* "}"
//   entry      := "tree:" BOOL | "graph:" graph | "components:[" comp ("," comp)* "]"
//   graph      := "{v:" INT ",e:[" [pair ("," pair)*] "]" [",roles:[" role ("," role)* "]"] "}"
//   pair       := "(" INT "," INT ")"
//   role       := "c" | "p"
//   comp       := "leaf" | "ratleaf" | model
//
// Syntax errors throw ParseError with a line and column; a well-formed but
// invalid descriptor throws InvalidDescriptor.
FieldDescriptor parse_field(std::string_view text);

/// Canonical text; parse_field(print_field(f)) == f.
std::string print_field(const FieldDescriptor& f);

std::string print_model(const Model& m);

/// Form literal: "[" entry ("," entry)* "]" where entry is a product of
/// factors from {1, s, t1..tr} with optional integer exponents
/// ("s*t1^3"), or "elem{...}" holding an element literal.
ClassForm parse_form(std::string_view text, const Tower& t);

/// "[1, s, t1, s*t1]".
std::string print_form(const Tower& t, const ClassForm& q);

/// Sparse polynomial literal over F_p: "3*t^-2 + 1*t^3", "2*t1*t2^-1 - 1".
/// `t` is an alias of `t1`.
LaurentElement parse_element(std::string_view text, const Tower& t);

/// "p,r".
Tower parse_tower(std::string_view text);

/// "algclosed" | "finite" | "finite:P" | "custom:R:HYP". A bare "finite"
/// means p = 3.
BaseClass parse_base(std::string_view text);
std::string print_base(const BaseClass& b);

}  // namespace qfinv
