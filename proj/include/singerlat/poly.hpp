#pragma once

#include <utility>
#include <vector>

#include "singerlat/gfield.hpp"

namespace singerlat::poly {

// Dense little-endian polynomials over a finite field; the zero polynomial
// is the empty vector and trimmed values have a nonzero top coefficient.
using Poly = std::vector<Elem>;

void trim(Poly& a);
int degree(const Poly& a);  // -1 for zero
Poly add(const FiniteField& f, const Poly& a, const Poly& b);
Poly sub(const FiniteField& f, const Poly& a, const Poly& b);
Poly mul(const FiniteField& f, const Poly& a, const Poly& b);
Poly scale(const FiniteField& f, const Poly& a, Elem c);
std::pair<Poly, Poly> divmod(const FiniteField& f, const Poly& a, const Poly& b);
Poly gcd(const FiniteField& f, Poly a, Poly b);  // monic, zero only if both are zero

}  // namespace singerlat::poly
