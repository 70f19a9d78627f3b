#include "skewifs/fiber.hpp"

#include <cmath>
#include <string>

namespace skewifs {
namespace {

constexpr double kDomainSlack = 1e-12;

// log(1 + e^y), overflow-safe
double softplus(double y) {
    if (y > 30.0) return y + std::exp(-y);
    return std::log1p(std::exp(y));
}

double clamp_unit(double x, const char* who) {
    if (x < -kDomainSlack || x > 1.0 + kDomainSlack)
        throw std::domain_error(std::string(who) + ": argument " +
                                std::to_string(x) + " outside [0,1]");
    if (x < 0.0) return 0.0;
    if (x > 1.0) return 1.0;
    return x;
}

} // namespace

FiberMap FiberMap::make_f0(double beta0, double lambda0, double theta,
                           double steepness) {
    if (!(beta0 > 1.0) || !(lambda0 > 0.0 && lambda0 < 1.0))
        throw std::invalid_argument("make_f0: need beta0 > 1, lambda0 in (0,1)");
    if (!(theta >= 0.0 && theta < 1.0) || !(steepness > 0.0))
        throw std::invalid_argument("make_f0: bad shape parameters");

    FiberMap m;
    m.kind_ = MapKind::F0;
    m.beta0_ = beta0;
    m.lambda0_ = lambda0;
    m.theta_ = theta;
    m.q_ = steepness;

    // Unit-integral constraint: the normalized logistic ramp must carry
    // area rho so that f0(1) = 1.
    const double r = (1.0 - lambda0) / (beta0 - lambda0);
    const double rho = (r - theta / 3.0) / (1.0 - theta);
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("make_f0: infeasible derivative profile");

    const double q = steepness;
    auto ramp_area = [q](double z) {
        auto sig = [q, z](double x) { return 1.0 / (1.0 + std::exp(q * (x - z))); };
        auto anti = [q, z](double x) { return x - softplus(q * (x - z)) / q; };
        const double integral = anti(1.0) - anti(0.0);
        return (integral - sig(1.0)) / (sig(0.0) - sig(1.0));
    };
    double lo = 1e-9, hi = 1.0 - 1e-9;
    if (ramp_area(lo) > rho || ramp_area(hi) < rho)
        throw std::invalid_argument("make_f0: corner solve not bracketed");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ramp_area(mid) < rho ? lo : hi) = mid;
    }
    m.z_ = 0.5 * (lo + hi);
    m.sig0_ = 1.0 / (1.0 + std::exp(-q * m.z_));
    m.sig1_ = 1.0 / (1.0 + std::exp(q * (1.0 - m.z_)));
    m.spz_ = softplus(-q * m.z_);
    return m;
}

FiberMap FiberMap::make_f1(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("make_f1: need gamma in (0,1)");
    FiberMap m;
    m.kind_ = MapKind::F1;
    m.gamma_ = gamma;
    return m;
}

FiberMap FiberMap::make_f2(double beta2, double p2) {
    if (!(beta2 > 1.0) || !(p2 > 0.0 && p2 < 1.0))
        throw std::invalid_argument("make_f2: need beta2 > 1, p2 in (0,1)");
    FiberMap m;
    m.kind_ = MapKind::F2;
    m.beta2_ = beta2;
    m.p2_ = p2;
    m.b_ = (beta2 - 1.0) / p2;
    return m;
}

double FiberMap::eval_f0(double x) const {
    // antiderivative of the derivative profile, zero at 0
    const double c = beta0_ - lambda0_;
    const double sqrt_part = x - (2.0 / 3.0) * x * std::sqrt(x);
    const double anti = x - softplus(q_ * (x - z_)) / q_ + spz_ / q_;
    const double ramp_part = (anti - sig1_ * x) / (sig0_ - sig1_);
    double y = lambda0_ * x +
               c * (theta_ * sqrt_part + (1.0 - theta_) * ramp_part);
    if (y < 0.0) y = 0.0;
    if (y > 1.0) y = 1.0;
    return y;
}

double FiberMap::deriv_f0(double x) const {
    const double c = beta0_ - lambda0_;
    const double sig = 1.0 / (1.0 + std::exp(q_ * (x - z_)));
    const double ramp = (sig - sig1_) / (sig0_ - sig1_);
    return lambda0_ + c * (theta_ * (1.0 - std::sqrt(x)) + (1.0 - theta_) * ramp);
}

double FiberMap::eval(double x) const {
    x = clamp_unit(x, "FiberMap::eval");
    switch (kind_) {
        case MapKind::F0: return eval_f0(x);
        case MapKind::F1: return gamma_ * (1.0 - x);
        case MapKind::F2: return beta2_ * x / (1.0 + b_ * x);
    }
    return 0.0; // unreachable
}

double FiberMap::deriv(double x) const {
    x = clamp_unit(x, "FiberMap::deriv");
    switch (kind_) {
        case MapKind::F0: return deriv_f0(x);
        case MapKind::F1: return -gamma_;
        case MapKind::F2: {
            const double d = 1.0 + b_ * x;
            return beta2_ / (d * d);
        }
    }
    return 0.0;
}

double FiberMap::image_lo() const { return kind_ == MapKind::F1 ? 0.0 : 0.0; }

double FiberMap::image_hi() const {
    switch (kind_) {
        case MapKind::F0: return 1.0;
        case MapKind::F1: return gamma_;
        case MapKind::F2: return beta2_ / (1.0 + b_);
    }
    return 1.0;
}

double FiberMap::invert(double y) const {
    const double lo = image_lo(), hi = image_hi();
    if (y < lo - kDomainSlack || y > hi + kDomainSlack)
        throw std::range_error("FiberMap::invert: value " + std::to_string(y) +
                               " outside image [" + std::to_string(lo) + "," +
                               std::to_string(hi) + "]");
    if (y < lo) y = lo;
    if (y > hi) y = hi;

    switch (kind_) {
        case MapKind::F1: return 1.0 - y / gamma_;
        case MapKind::F2: return y / (beta2_ - b_ * y);
        case MapKind::F0: break;
    }

    // safeguarded bisection/Newton on the increasing map
    double a = 0.0, b = 1.0, x = y; // f0 is close to identity-scale, decent seed
    for (int i = 0; i < 200; ++i) {
        if (b - a < 1e-14) break;
        if (x <= a || x >= b) x = 0.5 * (a + b);
        const double fx = eval_f0(x);
        if (fx < y) a = x; else b = x;
        const double dfx = deriv_f0(x);
        x = (dfx > 1e-12) ? x + (y - fx) / dfx : 0.5 * (a + b);
    }
    return 0.5 * (a + b);
}

SystemParams SystemParams::make(double beta0, double lambda0, double gamma,
                                double beta2, double p2, double delta,
                                double f0_theta, double f0_steepness) {
    if (!(gamma >= lambda0))
        throw std::invalid_argument("SystemParams: need gamma >= lambda0");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("SystemParams: need delta in (0,1)");
    SystemParams p;
    p.beta0 = beta0;
    p.lambda0 = lambda0;
    p.gamma = gamma;
    p.beta2 = beta2;
    p.p2 = p2;
    p.delta = delta;
    p.f0_theta = f0_theta;
    p.f0_steepness = f0_steepness;
    p.f0 = FiberMap::make_f0(beta0, lambda0, f0_theta, f0_steepness);
    p.f1 = FiberMap::make_f1(gamma);
    p.f2 = FiberMap::make_f2(beta2, p2);
    return p;
}

SystemParams SystemParams::default_validated() {
    return make(1.10, 0.75, 0.95, 1.10, 0.5, 0.002);
}

SystemParams SystemParams::contracting_lift() {
    return make(1.05, 0.90, 0.90, 1.05, 0.5, 0.004);
}

const FiberMap& SystemParams::map(int symbol) const {
    switch (symbol) {
        case 0: return f0;
        case 1: return f1;
        case 2: return f2;
    }
    throw std::invalid_argument("SystemParams::map: symbol not in {0,1,2}");
}

} // namespace skewifs
