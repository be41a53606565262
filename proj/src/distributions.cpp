#include "acapm/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "acapm/error.hpp"

namespace acapm {

namespace {

constexpr double kEps = 4.0 * std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

[[noreturn]] void not_converged(const char* what, double a, double b, double x) {
    throw NonConvergenceError(std::string(what) + " did not converge in " +
                              std::to_string(kMaxSpecialFunctionIterations) +
                              " iterations (a=" + std::to_string(a) + ", b=" +
                              std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

double clamp_unit(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// exp(-x + s ln x - ln Gamma(s)), the common prefactor of P and Q.
double gamma_prefactor(double s, double x) {
    return std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// P(s, x) by its power series; used for x < s + 1.
double gamma_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    double ap = s;
    for (int k = 0; k < kMaxSpecialFunctionIterations; ++k) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) return sum * gamma_prefactor(s, x);
    }
    not_converged("incomplete gamma series", s, 0.0, x);
}

// Q(s, x) by Legendre's continued fraction (modified Lentz); used for x >= s + 1.
double gamma_continued_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxSpecialFunctionIterations; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h * gamma_prefactor(s, x);
    }
    not_converged("incomplete gamma continued fraction", s, 0.0, x);
}

void check_gamma_domain(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::domain_error("incomplete gamma: shape must be positive and finite");
    }
    if (!(x >= 0.0)) throw std::domain_error("incomplete gamma: x must be >= 0");
}

// Continued fraction for I_x(a, b) (modified Lentz); converges quickly for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxSpecialFunctionIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h;
    }
    not_converged("incomplete beta continued fraction", a, b, x);
}

// I_x(a, b) given both x and y = 1 - x, so callers that know y more
// accurately than 1 - x can supply it.
double inc_beta_complemented(double a, double b, double x, double y) {
    if (x == 0.0) return 0.0;
    if (y == 0.0) return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log(y));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return clamp_unit(front * beta_continued_fraction(a, b, x) / a);
    }
    return clamp_unit(1.0 - front * beta_continued_fraction(b, a, y) / b);
}

}  // namespace

TailProbability::TailProbability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::domain_error("probability outside [0, 1]: " + std::to_string(value));
    }
}

double reg_inc_gamma_lower(double s, double x) {
    check_gamma_domain(s, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) return clamp_unit(gamma_series(s, x));
    return clamp_unit(1.0 - gamma_continued_fraction(s, x));
}

double reg_inc_gamma_upper(double s, double x) {
    check_gamma_domain(s, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return clamp_unit(1.0 - gamma_series(s, x));
    return clamp_unit(gamma_continued_fraction(s, x));
}

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::domain_error("incomplete beta: shapes must be positive and finite");
    }
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("incomplete beta: x outside [0, 1]");
    return inc_beta_complemented(a, b, x, 1.0 - x);
}

TailProbability chi2_sf(double x, int df) {
    if (df < 1) throw std::domain_error("chi-square: df must be >= 1");
    if (!(x >= 0.0)) throw std::domain_error("chi-square: statistic must be >= 0");
    return TailProbability(reg_inc_gamma_upper(0.5 * df, 0.5 * x));
}

TailProbability student_t_sf_two_sided(double t, int df) {
    if (df < 1) throw std::domain_error("Student-t: df must be >= 1");
    if (std::isnan(t)) throw std::domain_error("Student-t: statistic is NaN");
    if (std::isinf(t)) return TailProbability(0.0);
    if (t == 0.0) return TailProbability(1.0);
    const double nu = df;
    // x = df / (df + t^2) and y = t^2 / (df + t^2), scaled to avoid overflow.
    const double u = (t / nu) * t;
    const double x = 1.0 / (1.0 + u);
    const double y = std::isinf(u) ? 1.0 : u / (1.0 + u);
    return TailProbability(inc_beta_complemented(0.5 * nu, 0.5, x, y));
}

}  // namespace acapm
