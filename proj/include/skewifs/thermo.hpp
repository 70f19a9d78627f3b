#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "skewifs/fiber.hpp"
#include "skewifs/ifs.hpp"
#include "skewifs/symbolic.hpp"

namespace skewifs {

// A potential is evaluated along the fiber orbit: at step j it receives the
// word prefix w[0..j] (current symbol = prefix.back()) and the fiber point
// x_j reached before applying that symbol's map.
using Potential = std::function<double(const Word& prefix, double x)>;

// phi = -log|f'_{s}(x)| for the current symbol s; the pressure of t*phi is
// the central-exponent pressure P(t).
Potential central_potential(const SystemParams& params);

// Per-word min/max of the Birkhoff sum of a fixed potential over the start
// grid; t-independent, so one build serves a whole t-grid of brackets.
struct CylinderStats {
    int depth = 0;
    std::uint32_t mask = kAlphabetAll;
    std::vector<double> min_phi;  // lexicographic word order
    std::vector<double> max_phi;

    static CylinderStats build(const SystemParams& params, int n, unsigned workers = 0,
                               std::uint32_t alphabet_mask = kAlphabetAll);
    std::pair<double, double> bracket(double t) const;  // (lower, upper)
};

std::pair<double, double> pressure_bracket(const SystemParams& params, double t, int n,
                                           unsigned workers = 0);

double lateral_pressure(const SystemParams& params, double t);
double lateral_pressure_derivative(const SystemParams& params, double t);

struct PressureCurve {
    std::vector<double> t;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> lateral;
    std::vector<double> secant_left;   // midpoint secant into t[i] from the left
    std::vector<double> secant_right;  // midpoint secant out of t[i] to the right
    int depth = 0;
};

PressureCurve compute_curve(const SystemParams& params, double t_min, double t_max,
                            double t_step, int n, unsigned workers = 0);

struct GapCertificate {
    int depth = 0;
    double max_nonexceptional_exponent = 0.0;
    Word argmax_word;
    double min_exceptional_exponent = 0.0;  // log beta02^-
    double gap_width = 0.0;
    std::vector<double> per_period_max;  // max exponent over words of length exactly m
    std::vector<Word> per_period_argmax;
    bool valid() const { return gap_width > 0.0; }
};

GapCertificate spectrum_scan(const SystemParams& params, int max_period, unsigned workers = 0);

// Whole-word log-derivatives at every fixed point of every non-exceptional
// word of length n; drives the periodic partition-sum branch of P(t).
struct PeriodicStats {
    int depth = 0;
    std::vector<double> nonexc_D;

    static PeriodicStats build(const SystemParams& params, int n, unsigned workers = 0);
    double pressure(double t) const;
};

struct TransitionReport {
    double t_c_estimate = 0.0;
    double D_minus = 0.0;
    double D_plus = 0.0;
    double beta_c_minus = 0.0;
    double beta_c_plus = 0.0;
    double entropy_minus = 0.0;
    double entropy_plus = 0.0;
    double uncertainty = 0.0;  // secant-spread + localization-shift bound on D_plus
    int periodic_depth = 0;
    bool kink_found = false;
};

TransitionReport locate_transition(const PressureCurve& curve, const SystemParams& params,
                                   double tol, int periodic_depth = 10, unsigned workers = 0);

std::pair<double, double> asymptotic_slopes(const PressureCurve& curve);

std::pair<double, double> general_potential_pressure(const SystemParams& params,
                                                     const Potential& potential, double t, int n,
                                                     unsigned workers = 0);

struct CriterionReport {
    bool holds = false;
    double inf_lateral = 0.0;
    double sup_nonexceptional = 0.0;
};

CriterionReport transition_criterion(const SystemParams& params, const Potential& potential,
                                     int n, unsigned workers = 0);

}  // namespace skewifs
