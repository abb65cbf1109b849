#include "lukas/numeric.hpp"

#include <mpfr.h>

namespace lukas {

Real to_real(const Int& z, unsigned digits) {
  Real r(0, digits);
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real to_real(const Rat& q, unsigned digits) {
  Real r(0, digits);
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real real_pi(unsigned digits) {
  Real r(0, digits);
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real pow_int(const Real& base, long e) {
  Real r(0, base.precision());
  mpfr_pow_si(r.backend().data(), base.backend().data(), e, MPFR_RNDN);
  return r;
}

Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int catalan(unsigned long m) {
  return binomial(2 * m, m) / Int(m + 1);
}

}  // namespace lukas
