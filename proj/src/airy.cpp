#include "qbounce/airy.hpp"

#include <cmath>
#include <string>

#include "qbounce/errors.hpp"

namespace qbounce {

namespace {

// Ai(0) = 3^(-2/3)/Gamma(2/3),  -Ai'(0) = 3^(-1/3)/Gamma(1/3)
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = 0.25881940379280679840;
constexpr double kSeriesCut = 7.0;

// Maclaurin solution of y'' = x y:  Ai(x) = Ai(0) f(x) + Ai'(0) g(x) with
//   f = sum a_k x^{3k},    a_{k+1} = a_k x^3 / ((3k+2)(3k+3))
//   g = sum b_k x^{3k+1},  b_{k+1} = b_k x^3 / ((3k+3)(3k+4))
double ai_series(double x) {
    const double x3 = x * x * x;
    double f_term = 1.0, g_term = x;
    double f = f_term, g = g_term;
    for (int k = 0; k < 120; ++k) {
        f_term *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
        g_term *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
        f += f_term;
        g += g_term;
        if (std::abs(f_term) < 1e-18 * std::abs(f) && std::abs(g_term) < 1e-18 * (std::abs(g) + 1e-300))
            break;
    }
    return kAi0 * f - kAip0 * g;
}

// u_{k+1}/u_k for the asymptotic coefficients u_k = Gamma(3k+1/2)/(54^k k! Gamma(k+1/2))
double u_ratio(int k) {
    return (3.0 * k + 0.5) * (3.0 * k + 1.5) * (3.0 * k + 2.5) / (54.0 * (k + 1) * (k + 0.5));
}

// x >= cut:  Ai(x) ~ e^{-zeta} / (2 sqrt(pi) x^{1/4}) * sum (-1)^k u_k zeta^{-k}
double ai_asymptotic_pos(double x) {
    const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    double term = 1.0, sum = 1.0, prev = 1.0;
    for (int k = 0; k < 40; ++k) {
        term *= -u_ratio(k) / zeta;
        if (std::abs(term) > prev) break; // divergence onset of the asymptotic tail
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-18) break;
    }
    return std::exp(-zeta) / (2.0 * std::sqrt(M_PI) * std::pow(x, 0.25)) * sum;
}

// x <= -cut:  Ai(-z) ~ pi^{-1/2} z^{-1/4} [sin(zeta+pi/4) P - cos(zeta+pi/4) Q]
//   P = sum (-1)^k u_{2k} zeta^{-2k},  Q = sum (-1)^k u_{2k+1} zeta^{-2k-1}
double ai_asymptotic_neg(double x) {
    const double z = -x;
    const double zeta = (2.0 / 3.0) * z * std::sqrt(z);
    double p = 0.0, q = 0.0;
    double u = 1.0, pow_zeta = 1.0; // u_k, zeta^{-k}
    double prev = 1.0;
    for (int k = 0; k < 44; ++k) {
        const double term = u * pow_zeta;
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        const int sign = (k / 2 % 2 == 0) ? 1 : -1; // (-1)^floor(k/2)
        if (k % 2 == 0)
            p += sign * term;
        else
            q += sign * term;
        if (std::abs(term) < 1e-18) break;
        u *= u_ratio(k);
        pow_zeta /= zeta;
    }
    const double phase = zeta + 0.25 * M_PI;
    return (std::sin(phase) * p - std::cos(phase) * q) / (std::sqrt(M_PI) * std::pow(z, 0.25));
}

} // namespace

namespace detail {

double airy_ai_unchecked(double x) {
    if (std::abs(x) <= kSeriesCut) return ai_series(x);
    return x > 0.0 ? ai_asymptotic_pos(x) : ai_asymptotic_neg(x);
}

} // namespace detail

double airy_ai(double x) {
    if (!std::isfinite(x)) throw ValidationError("airy_ai: x must be finite");
    if (std::abs(x) > 50.0)
        throw ValidationError("airy_ai: |x| > 50 is outside the validated range");
    return detail::airy_ai_unchecked(x);
}

double airy_zero(int n) {
    if (n < 1 || n > 100)
        throw ValidationError("airy_zero: n must be in [1, 100], got " + std::to_string(n));

    // Asymptotic expansion of the zeros: alpha_n ~ T(3 pi (4n-1)/8) with
    // T(t) = t^{2/3} (1 + 5/48 t^-2 - 5/36 t^-4 + ...).  Good to ~1e-3 even
    // at n = 1; refined below by bisection on Ai itself.
    const double t = 3.0 * M_PI * (4.0 * n - 1.0) / 8.0;
    const double t2 = t * t;
    const double guess =
        std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / 48.0 / t2 - 5.0 / 36.0 / (t2 * t2));

    double lo = guess - 0.05, hi = guess + 0.05;
    double f_lo = detail::airy_ai_unchecked(-lo);
    double f_hi = detail::airy_ai_unchecked(-hi);
    // Widen until the bracket straddles the zero (the guess is far more
    // accurate than the zero spacing, so a couple of steps suffice).
    for (int i = 0; i < 20 && f_lo * f_hi > 0.0; ++i) {
        lo -= 0.05;
        hi += 0.05;
        f_lo = detail::airy_ai_unchecked(-lo);
        f_hi = detail::airy_ai_unchecked(-hi);
    }
    if (f_lo * f_hi > 0.0)
        throw NumericError("airy_zero: failed to bracket zero " + std::to_string(n));

    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = detail::airy_ai_unchecked(-mid);
        if (f_mid == 0.0) return mid;
        if (f_lo * f_mid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace qbounce
