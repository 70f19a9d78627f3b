#include "skewifs/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace skewifs {

ComposeResult compose_eval(const SystemParams& params, const Word& word, double x) {
    ComposeResult out;
    out.value = x;
    for (std::size_t j = 0; j < word.size(); ++j) {
        const FiberMap& f = params.map(word[j]);
        double d = f.deriv(out.value);
        out.log_abs_deriv += std::log(std::fabs(d));
        if (d < 0.0) out.sign = -out.sign;
        out.value = f.eval(out.value);
    }
    return out;
}

namespace {

constexpr int kGridPoints = 1025;
constexpr double kRootTol = 1e-12;

double displacement(const SystemParams& params, const Word& w, double x) {
    return compose_eval(params, w, x).value - x;
}

// Bisect g(x) - x on a bracket with a strict sign change.
double bisect_root(const SystemParams& params, const Word& w, double lo, double hi, double dlo) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at double resolution
        double dm = displacement(params, w, mid);
        if (dm == 0.0) return mid;
        if ((dm > 0.0) == (dlo > 0.0)) {
            lo = mid;
            dlo = dm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

namespace {

std::vector<ExponentRecord> scan_fixed_points(const SystemParams& params, const Word& word,
                                              const Word& probe) {
    std::vector<double> d(kGridPoints);
    std::vector<double> roots;
    for (int i = 0; i < kGridPoints; ++i) {
        double x = double(i) / (kGridPoints - 1);
        d[i] = displacement(params, probe, x);
    }
    for (int i = 0; i < kGridPoints; ++i) {
        double x = double(i) / (kGridPoints - 1);
        if (std::fabs(d[i]) < 1e-14) {
            roots.push_back(x);
        } else if (i + 1 < kGridPoints && d[i] * d[i + 1] < 0.0) {
            double x1 = double(i + 1) / (kGridPoints - 1);
            roots.push_back(bisect_root(params, probe, x, x1, d[i]));
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<ExponentRecord> out;
    for (double r : roots) {
        if (!out.empty() && r - out.back().fixed_point < 4.0 / (kGridPoints - 1) &&
            std::fabs(r - out.back().fixed_point) < 1e-9)
            continue;
        ComposeResult cr = compose_eval(params, probe, r);
        ExponentRecord rec;
        rec.word = word;
        rec.fixed_point = r;
        rec.exponent = cr.log_abs_deriv / double(probe.size());
        rec.attracting = cr.log_abs_deriv < 0.0;
        rec.converged = std::fabs(cr.value - r) < 1e-9;
        if (!rec.converged) {
            rec.bracket_lo = r - kRootTol;
            rec.bracket_hi = r + kRootTol;
        }
        out.push_back(rec);
    }
    return out;
}

}  // namespace

std::vector<ExponentRecord> fixed_points(const SystemParams& params, const Word& word) {
    if (word.empty()) throw std::invalid_argument("fixed_points: empty word");
    int ones = count_symbols(word).n1;
    // Orientation-reversing compositions are analyzed through their square.
    Word probe = (ones % 2 == 1) ? word + word : word;
    return scan_fixed_points(params, word, probe);
}

std::vector<ExponentRecord> fixed_points_primitive(const SystemParams& params, const Word& word) {
    if (word.empty()) throw std::invalid_argument("fixed_points_primitive: empty word");
    return scan_fixed_points(params, word, word);
}

FiberInterval fiber_interval(const SystemParams& params, const Word& word, double tol,
                             long max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("fiber_interval: tol must be positive");
    FiberInterval fi;
    fi.word = word;
    double lo = 0.0, hi = 1.0;
    for (long it = 0; it < max_iter; ++it) {
        double a = compose_eval(params, word, lo).value;
        double b = compose_eval(params, word, hi).value;
        if (a > b) std::swap(a, b);
        double move = std::max(std::fabs(a - lo), std::fabs(b - hi));
        lo = a;
        hi = b;
        fi.iterations = int(std::min<long>(it + 1, 1 << 30));
        if (move < tol) {
            fi.left = lo;
            fi.right = hi;
            return fi;
        }
    }
    std::ostringstream oss;
    oss << "fiber_interval: iteration cap " << max_iter << " exceeded; last bracket [" << lo
        << ", " << hi << "]";
    throw std::runtime_error(oss.str());
}

ReturnAnalysis analyze_returns(const SystemParams& params, const Word& word, double x0,
                               double delta, double delta_prime) {
    if (x0 < 0.0 || x0 > 1.0) throw std::domain_error("analyze_returns: x0 outside [0,1]");
    ReturnAnalysis ra;
    const long n = long(word.size());
    ra.orbit.resize(std::size_t(n) + 1);
    ra.orbit[0] = x0;
    for (long j = 0; j < n; ++j)
        ra.orbit[std::size_t(j) + 1] = params.map(word[std::size_t(j)]).eval(ra.orbit[std::size_t(j)]);

    auto in_H = [&](double p) { return p <= delta; };
    auto in_Hp = [&](double p) { return p >= delta_prime; };

    const double f0dp = params.f0.eval(delta_prime);
    for (long r = 1; r <= n; ++r) {
        if (!in_H(ra.orbit[std::size_t(r)]) || in_H(ra.orbit[std::size_t(r) - 1])) continue;
        // last H' visit strictly before the entry
        long i = -1;
        for (long j = r - 1; j >= 0; --j) {
            if (in_Hp(ra.orbit[std::size_t(j)])) {
                i = j;
            } else if (i >= 0) {
                break;
            }
        }
        // i is now the first time of the H' stretch adjacent to the entry.
        // A stretch starting at time 0 has no approach history (the orbit was
        // placed inside H' by fiat), so the approach-window facts cannot be
        // established; such returns are not tracked, like i < 0.
        if (i < 1) continue;
        long e = r;
        while (e + 1 <= n && in_H(ra.orbit[std::size_t(e) + 1])) ++e;

        ReturnBlock blk;
        blk.r = r;
        blk.e = e;
        blk.i = i;
        blk.N = r - i - 1;
        blk.p_entry = ra.orbit[std::size_t(r)];
        blk.p_approach = ra.orbit[std::size_t(i)];
        blk.entry_symbol_ok = word[std::size_t(r) - 1] == 1;
        blk.zeros_ok = true;
        for (long j = std::max<long>(i - 1, 0); j <= r - 2; ++j)
            if (word[std::size_t(j)] != 0) blk.zeros_ok = false;
        blk.approach_ok = blk.p_approach >= delta_prime && blk.p_approach < f0dp;
        long len = std::min(e, n - 1) - i + 1;  // symbols i..min(e, n-1)
        if (len >= 1) {
            Word seg = word.subword(std::size_t(i), std::size_t(len));
            blk.block_avg = compose_eval(params, seg, blk.p_approach).log_abs_deriv / double(len);
        }
        if (!blk.entry_symbol_ok || !blk.zeros_ok || !blk.approach_ok) ra.structure_ok = false;
        ra.blocks.push_back(blk);
    }
    return ra;
}

ExpandingItinerary expanding_itinerary(const SystemParams& params, double j_lo, double j_hi,
                                       double b) {
    if (!(0.0 < j_lo && j_lo < j_hi && j_hi <= b && b < 1.0))
        throw std::invalid_argument("expanding_itinerary: need 0 < j_lo < j_hi <= b < 1");
    const long climb_cap = 2000000;
    const int excursion_cap = 500;
    // Each excursion (climb to [1-b,1], flip with f1, climb back over j_hi)
    // stretches the interval by a uniform factor > 1, so after enough rounds
    // the image of J is wide enough that hitting hi >= j_hi forces lo <= j_lo
    // regardless of the discrete-overshoot phase.
    Word w;
    double lo = j_lo, hi = j_hi;
    for (int round = 1; round <= excursion_cap; ++round) {
        long steps = 0;
        while (lo < 1.0 - b) {
            lo = params.f0.eval(lo);
            hi = params.f0.eval(hi);
            w.push_back(0);
            if (++steps > climb_cap)
                throw std::runtime_error("expanding_itinerary: climb cap exceeded");
        }
        // drop back near 0 (orientation flips)
        {
            double a = params.f1.eval(hi);
            double c = params.f1.eval(lo);
            lo = a;
            hi = c;
            w.push_back(1);
        }
        // push the image back up over J
        steps = 0;
        while (hi < j_hi) {
            lo = params.f0.eval(lo);
            hi = params.f0.eval(hi);
            w.push_back(0);
            if (++steps > climb_cap)
                throw std::runtime_error("expanding_itinerary: climb cap exceeded");
        }
        if (lo > j_lo) continue;  // image too narrow to cover J yet
        // certify uniform expansion on J
        double kappa = std::numeric_limits<double>::infinity();
        const int grid = 129;
        for (int g = 0; g < grid; ++g) {
            double x = j_lo + (j_hi - j_lo) * double(g) / (grid - 1);
            kappa = std::min(kappa, std::exp(compose_eval(params, w, x).log_abs_deriv));
        }
        if (kappa <= 1.0) continue;
        // g covers J, so g(x) - x changes sign on J whichever way g runs
        double dlo = displacement(params, w, j_lo);
        double q = bisect_root(params, w, j_lo, j_hi, dlo);
        ExpandingItinerary out;
        out.word = w;
        out.kappa_est = kappa;
        out.fixed_point = q;
        out.j_lo = j_lo;
        out.j_hi = j_hi;
        out.covers = true;
        return out;
    }
    throw std::runtime_error("expanding_itinerary: no expanding covering word found");
}

}  // namespace skewifs
