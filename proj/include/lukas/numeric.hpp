#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

namespace lukas {

using Int = mpz_class;
using Rat = mpq_class;

/// Arbitrary-precision binary float. Every variable carries its own
/// precision; arithmetic results take the largest operand precision, so a
/// computation seeded with make_real(..., digits) stays at `digits`.
using Real = boost::multiprecision::mpfr_float;

inline Real make_real(long v, unsigned digits) { return Real(v, digits); }
inline Real make_real(double v, unsigned digits) { return Real(v, digits); }

Real to_real(const Int& z, unsigned digits);
Real to_real(const Rat& q, unsigned digits);
Real real_pi(unsigned digits);

/// base^e by binary exponentiation; negative exponents invert.
Real pow_int(const Real& base, long e);

/// Exact rational n/d in canonical form.
Rat make_rat(const Int& num, const Int& den);

Int binomial(unsigned long n, unsigned long k);
Int catalan(unsigned long m);

}  // namespace lukas
