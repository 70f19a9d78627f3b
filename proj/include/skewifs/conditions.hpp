#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewifs/fiber.hpp"

namespace skewifs {

// Constants derived from one validated instance.
//   delta_prime  left endpoint of H' = f1^{-1}(H) = [delta', 1]
//   beta_prime   max of f0', f2' outside H
//   beta_H       min of f0', f2' on H
//   lambda_prime max of f0' on H'
//   L            smallest integer strictly above
//                4*|log lambda0|*log beta+ / (log beta_H * log beta')
struct DerivedConstants {
    double delta_prime = 0;
    double beta_prime = 0;
    double beta_H = 0;
    double lambda_prime = 0;
    int L = 0;
};

struct Clause {
    std::string name;
    bool pass = false;
    double slack = 0; // positive = satisfied with that margin
};

struct ValidationReport {
    std::vector<Clause> clauses;

    bool all_pass() const;
    double min_slack() const;
    const Clause* find(const std::string& name) const;
    std::string to_text() const;
};

// Numerically checks every hypothesis on the instance.  Slacks are
// reported on a scale where "healthy" means well above zero:
//  - plain inequalities report the raw margin;
//  - identity checks (e.g. f1(1) = 0) report tolerance minus error with
//    tolerance 1e-5 (the errors themselves sit at rounding level);
//  - grid monotonicity/bound checks report per-unit-x rates, so that the
//    margin does not collapse with the grid step.
ValidationReport validate(const SystemParams& params,
                          int grid_resolution = 10000,
                          double margin = 1e-6);

DerivedConstants derive_constants(const SystemParams& params,
                                  int grid_resolution = 10000);

struct ParamBox {
    struct Range { double lo = 0, hi = 0; };
    Range beta0, lambda0, gamma, beta2, p2, delta;
};

// Latin-hypercube sampling followed by coordinate descent on total
// negative slack; returns every all-pass bundle found within the
// evaluation budget (at most `budget` validator calls).
std::vector<SystemParams> search_feasible(const ParamBox& box, int budget,
                                          std::uint64_t seed = 20260826ull);

} // namespace skewifs
