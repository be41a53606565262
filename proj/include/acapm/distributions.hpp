#pragma once

namespace acapm {

/// A probability in [0, 1]; construction outside that range throws
/// std::domain_error.
class TailProbability {
public:
    explicit TailProbability(double value);

    [[nodiscard]] double value() const noexcept { return value_; }
    explicit operator double() const noexcept { return value_; }

    friend bool operator==(const TailProbability&, const TailProbability&) = default;

private:
    double value_;
};

/// Iteration cap shared by the series and continued-fraction evaluators.
inline constexpr int kMaxSpecialFunctionIterations = 300;

/// Regularized lower incomplete gamma P(s, x), s > 0, x >= 0.
[[nodiscard]] double reg_inc_gamma_lower(double s, double x);

/// Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x), evaluated
/// directly in the continued-fraction region so small tails keep their
/// relative precision.
[[nodiscard]] double reg_inc_gamma_upper(double s, double x);

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
[[nodiscard]] double reg_inc_beta(double a, double b, double x);

/// Chi-square survival function P(X >= x), df >= 1.
[[nodiscard]] TailProbability chi2_sf(double x, int df);

/// Two-sided Student-t tail P(|T| >= |t|), df >= 1. Infinite t gives 0.
[[nodiscard]] TailProbability student_t_sf_two_sided(double t, int df);

}  // namespace acapm
