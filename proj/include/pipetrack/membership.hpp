#pragma once

namespace pipetrack::fis {

/// exp(-(x - c)^2 / (2 sigma^2)). Throws InvalidParameter for sigma <= 0.
double eval_gaussian(double x, double sigma, double c);

/// Smooth step from 0 at `a` to 1 at `c`, quadratic on each half, crossing
/// 0.5 at the midpoint `b`. `b` must equal (a + c) / 2 and a < c.
double eval_s(double x, double a, double b, double c);

/// Bell built from two S halves: 1 at `c`, 0 at c +/- b, 0.5 at c +/- b/2.
double eval_pi(double x, double b, double c);

enum class MembershipKind { gaussian, pi };

/// A term's shape. `width` is sigma for Gaussians and the half-width b for
/// pi shapes; `center` is the peak in both cases.
struct MembershipFunction {
    MembershipKind kind = MembershipKind::gaussian;
    double width = 1.0;
    double center = 0.0;

    double operator()(double x) const;

    friend bool operator==(const MembershipFunction &, const MembershipFunction &) = default;
};

/// Throws InvalidParameter unless width > 0 and finite.
void validate(const MembershipFunction &mf);

}  // namespace pipetrack::fis
