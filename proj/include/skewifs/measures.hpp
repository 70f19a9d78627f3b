#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "skewifs/fiber.hpp"
#include "skewifs/symbolic.hpp"

namespace skewifs {

struct BernoulliSpec {
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double entropy() const;
    bool valid(double tol = 1e-12) const;
};

struct Atom {
    Word word;
    double fiber_point = 0.0;
    double weight = 0.0;
    double exponent = 0.0;  // per-symbol central exponent at the atom
};

struct AtomicMeasure {
    std::vector<Atom> atoms;
    double exponent_avg = 0.0;
    double base_entropy = 0.0;  // log(word count)/m
    double total_weight() const;
};

// mu_m over all period-m words containing a 1, atoms at both fiber-interval
// endpoints with equal weight.
AtomicMeasure maxent_approximant(const SystemParams& params, int m, unsigned workers = 0);

// (mu1, mu2) over {0,2}^m: mu2 sits at fiber 0 (expanding), mu1 at the upper
// fiber endpoint (non-expanding); identical word supports.
std::pair<AtomicMeasure, AtomicMeasure> horseshoe_pair(const SystemParams& params, int m);

double bernoulli_lift_bound(const BernoulliSpec& spec, const SystemParams& params);

double fiber_triviality_sample(const BernoulliSpec& spec, const SystemParams& params, int samples,
                               int word_len, double tol, std::uint64_t seed = 20260826ull);

struct UniquenessReport {
    bool applicable = false;
    double gamma_beta_plus_sq = 0.0;  // gamma * (beta02^+)^2
    std::vector<std::pair<int, double>> exponents;  // (m, exponent_avg)
    bool confirms = false;
};

UniquenessReport uniqueness_check(const SystemParams& params, int m, unsigned workers = 0);

}  // namespace skewifs
