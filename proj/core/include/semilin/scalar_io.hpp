#pragma once

#include <stdexcept>
#include <string>

#include "semilin/algnum.hpp"

namespace semilin {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | primary
//   primary := number | 'i' | 'sqrt' '(' expr ')'
//            | 'root' '(' rational (',' rational)* ';' index ')' | '(' expr ')'
// root(c0,...,ck; j) is the j-th (0-based) distinct complex root of
// c0 + c1 x + ... + ck x^k, roots ordered lexicographically by (re, im).
ComplexAlgebraic parse_scalar(const std::string& s);
RealAlgebraic parse_real(const std::string& s);

std::string to_string(const RealAlgebraic& v);
std::string to_string(const ComplexAlgebraic& v);

}  // namespace semilin
