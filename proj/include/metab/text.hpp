#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "metab/laurent.hpp"
#include "metab/metabelian.hpp"

namespace metab {

// Text grammars. ASCII '-' and U+2212 are both accepted as minus signs.
//
//   poly  := ['+'|'-'] term (('+'|'-') term)*
//   term  := integer ('*' mono)* | mono ('*' mono)*
//   mono  := 's' index ('^' integer)?
//
//   word  := item* | 'e'
//   item  := atom ('^' integer)?
//   atom  := 'a' index | 'e' | '(' word ')' | '[' word ',' word ']'
//
//   nelem := ['+'|'-'] nterm (('+'|'-') nterm)* | '0'
//   nterm := [integer '*'] 'x[' index ',' index ']' ('^(' poly ')')?
//
// Every parser throws ParseError with the offending offset, including for
// indices outside the declared rank.

LaurentPoly parse_poly(std::string_view text, std::size_t rank);
Word parse_word(std::string_view text, std::size_t rank);
RawNCombination parse_nelement(std::string_view text, std::size_t rank);

/// Canonical form: terms ascending in exponent order, coefficient 1 and
/// exponent 1 omitted, "0" for zero.
std::string render_poly(const LaurentPoly& p);
/// Letters separated by single spaces, "e" for the empty word.
std::string render_word(const Word& w);
std::string render_nelement(const NElement& f);
std::string render_raw(const RawNCombination& raw);
/// Monomial notation such as "s1^2*s3^-1", "1" for the identity.
std::string render_q(const QElement& q);

}  // namespace metab
