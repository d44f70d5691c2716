#pragma once

#include <string>

namespace tinydense {

/// Shortest decimal text that parses back to exactly `value`. Always contains a
/// '.', 'e' or is "inf"/"nan", so it reads as a float literal in JSON and Python.
std::string shortest_float(double value);

/// The text a Python interpreter prints for repr(value): shortest round-trip
/// digits, fixed notation for decimal exponents in [-4, 16), scientific otherwise.
std::string python_float_repr(double value);

/// Rounds `value` to `decimals` fractional digits from its exact binary value,
/// resolving exact ties to even (the behaviour of Python's round(x, n)).
double round_decimal(double value, int decimals);

}  // namespace tinydense
