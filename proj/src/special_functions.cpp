#include "satev/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "satev/errors.hpp"

namespace satev {
namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300; // floor for Lentz denominators

// P(a, x) by its power series around x = 0. Converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericalFailure("incomplete gamma series did not converge, a=" + std::to_string(a) +
                           " x=" + std::to_string(x));
}

// Q(a, x) by the Lentz continued fraction. Converges fast for x >= a + 1.
double gamma_q_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericalFailure("incomplete gamma fraction did not converge, a=" + std::to_string(a) +
                           " x=" + std::to_string(x));
}

// Continued fraction for the incomplete beta (Lentz evaluation).
double beta_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double dm = static_cast<double>(m);
        const double m2 = 2.0 * dm;
        double aa = dm * (b - dm) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + dm) * (qab + dm) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h;
    }
    throw NumericalFailure("incomplete beta fraction did not converge, a=" + std::to_string(a) +
                           " b=" + std::to_string(b) + " x=" + std::to_string(x));
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw NonFiniteInput(std::string(what) + " must be finite");
    }
}

} // namespace

double regularized_gamma_p(double a, double x) {
    require_finite(a, "a");
    require_finite(x, "x");
    if (a <= 0.0) throw ValidationError("regularized_gamma_p: a must be positive");
    if (x < 0.0) throw ValidationError("regularized_gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
    require_finite(a, "a");
    require_finite(x, "x");
    if (a <= 0.0) throw ValidationError("regularized_gamma_q: a must be positive");
    if (x < 0.0) throw ValidationError("regularized_gamma_q: x must be non-negative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double regularized_beta(double a, double b, double x) {
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(x, "x");
    if (a <= 0.0 || b <= 0.0) throw ValidationError("regularized_beta: a and b must be positive");
    if (x < 0.0 || x > 1.0) throw ValidationError("regularized_beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x));
    // The fraction converges fastest below the mean of the distribution;
    // above it, evaluate the mirrored integral instead.
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double chi_square_sf(double x, int df) {
    if (df < 1) throw InvalidDf("chi_square_sf: df must be >= 1, got " + std::to_string(df));
    require_finite(x, "x");
    if (x < 0.0) throw ValidationError("chi_square_sf: x must be non-negative");
    return regularized_gamma_q(0.5 * df, 0.5 * x);
}

double student_t_sf(double t, int df) {
    if (df < 1) throw InvalidDf("student_t_sf: df must be >= 1, got " + std::to_string(df));
    require_finite(t, "t");
    if (t == 0.0) return 0.5;
    if (t < 0.0) return 1.0 - student_t_sf(-t, df);
    const double x = df / (df + t * t);
    return 0.5 * regularized_beta(0.5 * df, 0.5, x);
}

} // namespace satev
