#include "pipetrack/membership.hpp"

#include <cmath>
#include <string>

#include "pipetrack/error.hpp"

namespace pipetrack::fis {

double eval_gaussian(double x, double sigma, double c) {
    if (!(sigma > 0.0)) throw InvalidParameter("gaussian sigma must be positive, got " + std::to_string(sigma));
    const double d = x - c;
    return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

double eval_s(double x, double a, double b, double c) {
    if (!(a < c)) throw InvalidParameter("S-function requires a < c");
    const double mid = 0.5 * (a + c);
    if (std::abs(b - mid) > 1e-12 * std::max(1.0, std::abs(mid))) {
        throw InvalidParameter("S-function requires b = (a + c) / 2");
    }
    if (x <= a) return 0.0;
    const double span = c - a;
    if (x <= b) {
        const double t = (x - a) / span;
        return 2.0 * t * t;
    }
    if (x <= c) {
        const double t = (x - c) / span;
        return 1.0 - 2.0 * t * t;
    }
    return 1.0;
}

double eval_pi(double x, double b, double c) {
    if (!(b > 0.0)) throw InvalidParameter("pi half-width must be positive, got " + std::to_string(b));
    if (x <= c) return eval_s(x, c - b, c - b / 2.0, c);
    return 1.0 - eval_s(x, c, c + b / 2.0, c + b);
}

double MembershipFunction::operator()(double x) const {
    switch (kind) {
        case MembershipKind::gaussian:
            return eval_gaussian(x, width, center);
        case MembershipKind::pi:
            return eval_pi(x, width, center);
    }
    return 0.0;
}

void validate(const MembershipFunction &mf) {
    if (!(mf.width > 0.0) || !std::isfinite(mf.width) || !std::isfinite(mf.center)) {
        throw InvalidParameter("membership width must be positive and finite");
    }
}

}  // namespace pipetrack::fis
