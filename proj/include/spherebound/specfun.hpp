#pragma once

// Log-domain Gamma-family functions. Every Gamma ratio used elsewhere in the
// library is formed from these in log space; Gamma itself is never
// exponentiated, since Gamma(n/2) overflows long before n reaches the
// dimensions of interest.

namespace spherebound {

/// A finite, strictly positive real argument. Construction throws
/// std::domain_error otherwise, so it converts implicitly from double at the
/// call sites of the functions below.
class PositiveReal {
public:
  PositiveReal(double value);  // NOLINT(google-explicit-constructor)

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }  // NOLINT

private:
  double value_;
};

/// ln Gamma(x). Relative error below 1e-12 on [0.5, 1e9], including near the
/// zeros at x = 1 and x = 2.
double log_gamma(PositiveReal x);

/// psi(x) = d/dx ln Gamma(x).
double digamma(PositiveReal x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double log_beta(PositiveReal a, PositiveReal b);

/// ln Gamma(x + delta) - ln Gamma(x) for delta >= 0, evaluated without
/// subtracting two large log-Gamma values. For x = 5e5 the direct difference
/// loses about nine digits; this form keeps full precision.
double log_gamma_ratio(PositiveReal x, double delta);

}  // namespace spherebound
