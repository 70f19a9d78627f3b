#pragma once

#include <stdexcept>

namespace skewifs {

enum class MapKind { F0, F1, F2 };

// A monotone C^1 self-map of [0,1] with evaluable value, derivative and
// inverse.  Three families:
//
//   F0  increasing, fixes 0 and 1; f'(0) = beta0 > 1, f'(1) = lambda0 < 1,
//       derivative strictly decreasing and >= lambda0 everywhere.  The
//       derivative profile is
//          f0'(x) = lambda0 + (beta0-lambda0) * [ theta*(1-sqrt(x))
//                                               + (1-theta)*u(x) ]
//       where u is a normalized logistic ramp 1 -> 0 whose corner z is
//       solved at construction so that f0(1) = 1 exactly.  theta adds a
//       steep initial drop (keeps sup f' off a neighbourhood of 0 strictly
//       below beta0); the steepness q shapes where the expansion gives way
//       to contraction.
//   F1  x -> gamma*(1-x), the orientation-reversing affine leg.
//   F2  x -> beta2*x/(1+b*x) with b = (beta2-1)/p2: fixes 0 with
//       derivative beta2 and has the attracting fixed point p2.
class FiberMap {
public:
    static FiberMap make_f0(double beta0, double lambda0,
                            double theta = 0.05, double steepness = 15.0);
    static FiberMap make_f1(double gamma);
    static FiberMap make_f2(double beta2, double p2);

    MapKind kind() const { return kind_; }

    double eval(double x) const;
    double deriv(double x) const;   // signed (negative for F1)
    double invert(double y) const;  // y must lie in the image of [0,1]

    // image of [0,1], as an interval [lo,hi]
    double image_lo() const;
    double image_hi() const;

    FiberMap() = default;  // a default-constructed map is a placeholder

private:
    MapKind kind_ = MapKind::F0;
    // F0
    double beta0_ = 0, lambda0_ = 0, theta_ = 0, q_ = 0;
    double z_ = 0, sig0_ = 0, sig1_ = 0, spz_ = 0;
    // F1
    double gamma_ = 0;
    // F2
    double beta2_ = 0, p2_ = 0, b_ = 0;

    double eval_f0(double x) const;
    double deriv_f0(double x) const;
};

// One instance of the three-map system plus the transition-zone width
// delta (H = [0,delta]).  Immutable after construction; shape parameters
// of the F0 profile are part of the bundle.
struct SystemParams {
    double beta0, lambda0, gamma, beta2, p2, delta;
    double f0_theta;
    double f0_steepness;

    FiberMap f0, f1, f2;

    static SystemParams make(double beta0, double lambda0, double gamma,
                             double beta2, double p2, double delta,
                             double f0_theta = 0.05,
                             double f0_steepness = 15.0);

    // The shipped instance: validated against every hypothesis with
    // comfortable margins, and with the top of the non-exceptional
    // exponent spectrum reached by short periodic orbits.
    static SystemParams default_validated();

    // Secondary preset with gamma*(beta02_plus)^2 < 1, where random
    // symbol sequences almost surely have trivial fibers.
    static SystemParams contracting_lift();

    const FiberMap& map(int symbol) const;

    double beta02_minus() const { return beta0 < beta2 ? beta0 : beta2; }
    double beta02_plus() const { return beta0 > beta2 ? beta0 : beta2; }
    double p1() const { return gamma / (1.0 + gamma); }
};

} // namespace skewifs
