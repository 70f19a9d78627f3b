#pragma once

#include <vector>

#include "skewifs/fiber.hpp"
#include "skewifs/symbolic.hpp"

namespace skewifs {

// Composition f_[w] = f_{w[m-1]} o ... o f_{w[0]} applied to a fiber point.
// Derivatives are accumulated in log-absolute-value space; the sign is
// (-1)^{#1 in w} since f1 is the only decreasing branch.
struct ComposeResult {
    double value = 0.0;
    double log_abs_deriv = 0.0;
    int sign = 1;
};

ComposeResult compose_eval(const SystemParams& params, const Word& word, double x);

struct ExponentRecord {
    Word word;
    double fixed_point = 0.0;
    double exponent = 0.0;  // per-symbol average of log|f_[w]'|
    bool attracting = false;
    bool converged = true;
    double bracket_lo = 0.0;  // populated when converged is false
    double bracket_hi = 0.0;
};

// All fixed points of g = f_[w] (orientation-preserving case), or of g^2
// when w contains an odd number of 1s; exponents are always per symbol of
// the traversed word (2m symbols in the g^2 case).
std::vector<ExponentRecord> fixed_points(const SystemParams& params, const Word& word);

// Fixed points of g itself, never of its square; the per-symbol exponent is
// over the m symbols of the word. Used by the periodic partition sums, where
// period-2 cycles of orientation-reversing words belong to depth 2m.
std::vector<ExponentRecord> fixed_points_primitive(const SystemParams& params, const Word& word);

struct FiberInterval {
    Word word;
    double left = 0.0;
    double right = 1.0;
    int iterations = 0;
    bool trivial(double tol) const { return right - left < tol; }
};

FiberInterval fiber_interval(const SystemParams& params, const Word& word, double tol,
                             long max_iter = 1000000);

struct ReturnBlock {
    long r = 0;       // entry time into H
    long e = 0;       // exit time from H
    long i = 0;       // approach time (last H' visit before entry)
    long N = 0;       // r - i - 1
    double p_entry = 0.0;       // orbit point at time r
    double p_approach = 0.0;    // orbit point at time i
    double block_avg = 0.0;     // (1/(e-i+1)) * log|f_[w_i..w_e]'(p_i)|
    bool entry_symbol_ok = false;   // w[r-1] == 1
    bool zeros_ok = false;          // w[j] == 0 on {i-1,...,r-2}
    bool approach_ok = false;       // delta' <= p_i < f0(delta')
};

struct ReturnAnalysis {
    std::vector<ReturnBlock> blocks;
    std::vector<double> orbit;  // p_0 .. p_n
    bool structure_ok = true;   // all per-block structural facts hold
};

// Tracks returns to H = [0, delta] that are approached through a stretch in
// H' = [delta', 1] entered after time 0; a stretch beginning at time 0 has no
// approach history and is not recorded.
ReturnAnalysis analyze_returns(const SystemParams& params, const Word& word, double x0,
                               double delta, double delta_prime);

struct ExpandingItinerary {
    Word word;
    double kappa_est = 0.0;   // min over J of |f_[word]'|
    double fixed_point = 0.0;
    double j_lo = 0.0;
    double j_hi = 0.0;
    bool covers = false;      // f_[word](J) covers J
};

// Builds a word 0^n 1 0^m ... whose composition maps J = [j_lo, j_hi] over
// itself expandingly; throws std::runtime_error if no such word is found
// within the escalation cap.
ExpandingItinerary expanding_itinerary(const SystemParams& params, double j_lo, double j_hi,
                                       double b);

}  // namespace skewifs
