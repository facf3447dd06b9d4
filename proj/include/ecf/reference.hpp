#pragma once

#include "ecf/hpfloat.hpp"

// Classical transcendental routines used as independent references for the
// continued-fraction evaluators. None of them touches a continued fraction:
// logarithms use binary argument reduction plus the atanh series, arctangents
// use reflection, argument halving and the Taylor series, and pi uses
// Machin's arctangent series.

namespace ecf {

/// Natural logarithm; relative error within 4 ulps at x.precision().
/// Throws DomainError for x <= 0.
HPFloat ln_ref(const HPFloat& x);

/// Arctangent; relative error within 4 ulps. Odd by construction.
HPFloat atan_ref(const HPFloat& x);

/// pi at the requested precision (>= 64 bits), within 2 ulps.
HPFloat pi_ref(long bits = kDefaultPrecision);

inline HPFloat ln_ref(const Rational& x, long bits) { return ln_ref(HPFloat(x, bits)); }
inline HPFloat atan_ref(const Rational& x, long bits) { return atan_ref(HPFloat(x, bits)); }

}  // namespace ecf
