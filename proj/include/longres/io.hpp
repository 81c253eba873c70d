#pragma once

#include <string>
#include <variant>

#include "longres/matrix_form.hpp"

namespace longres {

// Parses the polynomial grammar
//   expression = term (('+'|'-') term)*
//   term       = [rational '*'] monomial | rational
//   rational   = integer ['/' positive-integer]
//   monomial   = var ('*' var)*
//   var        = 'z' index ['^' positive-integer]
// with 1-based variable names z1..zd.  Whitespace ignored.  Throws
// ParseError with position info, InvariantError when the terms are not
// homogeneous.
Form parse_form(const std::string& text, int vars);

// Inverse of parse_form, e.g. "3/2*z1^2*z3 - z2*z3^2".
std::string form_to_string(const Form& f);

using ParsedInput = std::variant<RatFn, MatrixForm>;

// JSON documents: {"d":..,"m":..,"num":[[..]],"den":".."} parses to a
// rational function; {"d":..,"m":..,"F":[[..]]} to a matrix form.
ParsedInput parse_input_text(const std::string& json_text);
ParsedInput parse_input_file(const std::string& path);

std::string serialize(const RatFn& f);
std::string serialize(const MatrixForm& F);

// 17 significant digits, enough to round-trip an IEEE double.
std::string format_double(double x);

}  // namespace longres
