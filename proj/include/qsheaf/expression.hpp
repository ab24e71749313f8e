#pragma once

#include "qsheaf/novikov.hpp"

#include <string_view>

namespace qsheaf {

/// Parses sums of products like `3/2*D1^2*D3 - q1*D4`.
///
/// D<i> is the class of the i-th ray (1-based) written in the Picard basis,
/// psi<i> the i-th Picard generator, q<j> the j-th Mori generator (a bare
/// `q` is accepted when there is exactly one). Whitespace is ignored.
/// Failures throw ParseError with the 1-based column.
NovikovPolynomial parse_expression(std::string_view text, const ClassLattice& cl);

/// Same grammar with q-symbols rejected.
Polynomial parse_classical(std::string_view text, const ClassLattice& cl);

/// Picard-basis linear form of [D_rho].
Polynomial divisor_polynomial(const ClassLattice& cl, std::size_t rho);

}  // namespace qsheaf
