#ifndef QBOUNCE_AIRY_HPP
#define QBOUNCE_AIRY_HPP

namespace qbounce {

// Airy function Ai(x).  Maclaurin series for |x| <= 7, standard asymptotic
// expansions beyond.  Absolute error <= 1e-10 on [-20, 5] (and in practice
// everywhere on the validated range).
// Preconditions: x finite, |x| <= 50.
double airy_ai(double x);

// n-th positive zero alpha_n of Ai(-x), i.e. Ai(-alpha_n) = 0.
// Valid for 1 <= n <= 100; absolute error <= 1e-9; strictly increasing in n.
double airy_zero(int n);

namespace detail {
// Evaluation without the public-range clamp; used internally where arguments
// beyond |x| = 50 arise (deep zeros, far asymptotic tails).
double airy_ai_unchecked(double x);
} // namespace detail

} // namespace qbounce

#endif
