#pragma once

#include <span>

#include "hbb/common.hpp"

namespace hbb {

/// log|x| together with the sign of x, for products that would overflow.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  double value() const { return sign * std::exp(log_abs); }
};

/// log|Gamma(x)| and sign(Gamma(x)). Throws PoleError for x in {0,-1,-2,...}.
SignedLog log_gamma(double x);

/// Rising factorial (a)_b = Gamma(a+b)/Gamma(a).
///
/// Non-negative integer b is evaluated as the finite product a(a+1)...(a+b-1),
/// which is exact for integer a <= 0 as well. Other b go through log_gamma;
/// a PoleError is thrown if a or a+b is a pole of Gamma.
double pochhammer(double a, double b);

/// log|(a)_b| with sign, for large b where the product itself overflows.
SignedLog log_pochhammer(double a, double b);

/// Gegenbauer polynomial C_k^lambda(t) by the three-term recurrence in k.
/// Requires lambda > -1/2 and t in [-1, 1].
double gegenbauer(unsigned k, double lambda, double t);

/// Fills out[0..out.size()) with C_0^lambda(t), C_1^lambda(t), ...
void gegenbauer_sequence(double lambda, double t, std::span<double> out);

}  // namespace hbb
