#include "skewifs/thermo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "skewifs/logsumexp.hpp"

namespace skewifs {

namespace {

constexpr int kStartPoints = 33;

unsigned resolve_workers(unsigned workers) {
    if (workers) return workers;
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

std::vector<int> mask_symbols(std::uint32_t mask) {
    std::vector<int> syms;
    for (int s = 0; s < 3; ++s)
        if (mask & (1u << s)) syms.push_back(s);
    if (syms.empty()) throw std::invalid_argument("empty alphabet mask");
    return syms;
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::vector<double> default_starts() {
    std::vector<double> s(kStartPoints);
    for (int i = 0; i < kStartPoints; ++i) s[i] = double(i) / (kStartPoints - 1);
    return s;
}

struct Track {
    double x;
    double s;
};

struct ScanPlan {
    int prefix_depth;
    std::size_t task_count;
    std::size_t leaves_per_task;
};

// The prefix depth is fixed (not worker-dependent) so that task boundaries,
// and hence every accumulation order, are identical for any worker count.
ScanPlan plan_scan(int n, std::uint32_t mask) {
    std::size_t b = mask_symbols(mask).size();
    int p = std::min(n, 4);
    return ScanPlan{p, ipow(b, p), ipow(b, n - p)};
}

// Enumerates all words of length n over the mask in lexicographic order; for
// each word calls leaf(word_index, min_sum, max_sum) with the extrema over
// the start points of the Birkhoff sum of phi. Leaves of distinct tasks may
// be emitted concurrently; within a task the order is lexicographic.
void scan_words(const SystemParams& params, int n, std::uint32_t mask,
                const std::vector<double>& starts, const Potential& phi, unsigned workers,
                const std::function<void(std::size_t, double, double)>& leaf) {
    if (n < 1) throw std::invalid_argument("scan_words: depth must be >= 1");
    const std::vector<int> syms = mask_symbols(mask);
    const std::size_t b = syms.size();
    const ScanPlan plan = plan_scan(n, mask);
    const unsigned nthreads =
        unsigned(std::min<std::size_t>(resolve_workers(workers), plan.task_count));

    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        std::vector<std::vector<Track>> lv(std::size_t(n) + 1);
        for (auto& l : lv) l.resize(starts.size());
        Word prefix;
        std::function<void(int, std::size_t&)> dfs = [&](int depth, std::size_t& idx) {
            if (depth == n) {
                double mn = std::numeric_limits<double>::infinity();
                double mx = -mn;
                for (const Track& tr : lv[std::size_t(depth)]) {
                    mn = std::min(mn, tr.s);
                    mx = std::max(mx, tr.s);
                }
                leaf(idx++, mn, mx);
                return;
            }
            for (int s : syms) {
                prefix.push_back(std::uint8_t(s));
                const FiberMap& f = params.map(s);
                const auto& cur = lv[std::size_t(depth)];
                auto& nxt = lv[std::size_t(depth) + 1];
                for (std::size_t i = 0; i < cur.size(); ++i) {
                    nxt[i].s = cur[i].s + phi(prefix, cur[i].x);
                    nxt[i].x = f.eval(cur[i].x);
                }
                dfs(depth + 1, idx);
                prefix.pop_back();
            }
        };
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= plan.task_count) break;
            // rebuild the prefix word for task k (base-b digits, msd first)
            prefix = Word();
            for (std::size_t i = 0; i < starts.size(); ++i) lv[0][i] = Track{starts[i], 0.0};
            std::size_t rem = k;
            for (int j = 0; j < plan.prefix_depth; ++j) {
                std::size_t div = ipow(b, plan.prefix_depth - 1 - j);
                int s = syms[rem / div];
                rem %= div;
                prefix.push_back(std::uint8_t(s));
                const FiberMap& f = params.map(s);
                const auto& cur = lv[std::size_t(j)];
                auto& nxt = lv[std::size_t(j) + 1];
                for (std::size_t i = 0; i < cur.size(); ++i) {
                    nxt[i].s = cur[i].s + phi(prefix, cur[i].x);
                    nxt[i].x = f.eval(cur[i].x);
                }
            }
            std::size_t idx = k * plan.leaves_per_task;
            dfs(plan.prefix_depth, idx);
        }
    };
    if (nthreads <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
}

}  // namespace

Potential central_potential(const SystemParams& params) {
    return [params](const Word& prefix, double x) {
        return -std::log(std::fabs(params.map(prefix[prefix.size() - 1]).deriv(x)));
    };
}

CylinderStats CylinderStats::build(const SystemParams& params, int n, unsigned workers,
                                   std::uint32_t alphabet_mask) {
    if (n < 1 || n > 14) throw std::invalid_argument("CylinderStats: depth must be in [1,14]");
    CylinderStats st;
    st.depth = n;
    st.mask = alphabet_mask;
    std::size_t count = ipow(mask_symbols(alphabet_mask).size(), n);
    st.min_phi.resize(count);
    st.max_phi.resize(count);
    Potential phi = central_potential(params);
    scan_words(params, n, alphabet_mask, default_starts(), phi, workers,
               [&st](std::size_t idx, double mn, double mx) {
                   st.min_phi[idx] = mn;
                   st.max_phi[idx] = mx;
               });
    return st;
}

std::pair<double, double> CylinderStats::bracket(double t) const {
    LogSumExp lo, hi;
    for (std::size_t i = 0; i < min_phi.size(); ++i) {
        double a = t * min_phi[i];
        double b = t * max_phi[i];
        lo.add(std::min(a, b));
        hi.add(std::max(a, b));
    }
    return {lo.value() / depth, hi.value() / depth};
}

std::pair<double, double> general_potential_pressure(const SystemParams& params,
                                                     const Potential& potential, double t, int n,
                                                     unsigned workers) {
    if (n < 1 || n > 16) throw std::invalid_argument("pressure depth must be in [1,16]");
    const ScanPlan plan = plan_scan(n, kAlphabetAll);
    std::vector<LogSumExp> los(plan.task_count), his(plan.task_count);
    scan_words(params, n, kAlphabetAll, default_starts(), potential, workers,
               [&](std::size_t idx, double mn, double mx) {
                   std::size_t k = idx / plan.leaves_per_task;
                   double a = t * mn;
                   double b = t * mx;
                   los[k].add(std::min(a, b));
                   his[k].add(std::max(a, b));
               });
    LogSumExp lo, hi;
    for (std::size_t k = 0; k < plan.task_count; ++k) {
        lo.merge(los[k]);
        hi.merge(his[k]);
    }
    return {lo.value() / n, hi.value() / n};
}

std::pair<double, double> pressure_bracket(const SystemParams& params, double t, int n,
                                           unsigned workers) {
    return general_potential_pressure(params, central_potential(params), t, n, workers);
}

double lateral_pressure(const SystemParams& params, double t) {
    return log_add_exp(-t * std::log(params.beta0), -t * std::log(params.beta2));
}

double lateral_pressure_derivative(const SystemParams& params, double t) {
    double l0 = std::log(params.beta0), l2 = std::log(params.beta2);
    double w0 = std::exp(-t * l0 - lateral_pressure(params, t));
    double w2 = std::exp(-t * l2 - lateral_pressure(params, t));
    return -(l0 * w0 + l2 * w2);
}

PressureCurve compute_curve(const SystemParams& params, double t_min, double t_max, double t_step,
                            int n, unsigned workers) {
    if (!(t_step > 0.0) || !(t_max > t_min))
        throw std::invalid_argument("compute_curve: bad t range");
    CylinderStats st = CylinderStats::build(params, n, workers);
    PressureCurve c;
    c.depth = n;
    for (double t = t_min; t <= t_max + 1e-9; t += t_step) c.t.push_back(t);
    c.lower.resize(c.t.size());
    c.upper.resize(c.t.size());
    c.lateral.resize(c.t.size());
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        auto br = st.bracket(c.t[i]);
        c.lower[i] = br.first;
        c.upper[i] = br.second;
        c.lateral[i] = lateral_pressure(params, c.t[i]);
    }
    std::size_t m = c.t.size();
    c.secant_left.assign(m, 0.0);
    c.secant_right.assign(m, 0.0);
    auto mid = [&](std::size_t i) { return 0.5 * (c.lower[i] + c.upper[i]); };
    for (std::size_t i = 0; i + 1 < m; ++i)
        c.secant_right[i] = (mid(i + 1) - mid(i)) / (c.t[i + 1] - c.t[i]);
    for (std::size_t i = 1; i < m; ++i) c.secant_left[i] = c.secant_right[i - 1];
    if (m > 1) {
        c.secant_left[0] = c.secant_right[0];
        c.secant_right[m - 1] = c.secant_left[m - 1];
    }
    return c;
}

GapCertificate spectrum_scan(const SystemParams& params, int max_period, unsigned workers) {
    if (max_period < 1 || max_period > 14)
        throw std::invalid_argument("spectrum_scan: max_period must be in [1,14]");
    GapCertificate cert;
    cert.depth = max_period;
    cert.min_exceptional_exponent = std::log(params.beta02_minus());
    cert.max_nonexceptional_exponent = -std::numeric_limits<double>::infinity();
    for (int m = 1; m <= max_period; ++m) {
        std::vector<Word> words = enumerate_words(m, kAlphabetAll);
        std::atomic<std::size_t> next{0};
        unsigned nthreads = resolve_workers(workers);
        std::vector<double> local_max(nthreads, -std::numeric_limits<double>::infinity());
        std::vector<Word> local_arg(nthreads);
        auto run = [&](unsigned tid) {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= words.size()) break;
                if (is_exceptional(words[i])) continue;
                for (const ExponentRecord& rec : fixed_points(params, words[i])) {
                    if (rec.exponent > local_max[tid]) {
                        local_max[tid] = rec.exponent;
                        local_arg[tid] = words[i];
                    }
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(run, i);
        run(0);
        for (auto& th : pool) th.join();
        double mmax = -std::numeric_limits<double>::infinity();
        Word marg;
        for (unsigned i = 0; i < nthreads; ++i) {
            if (local_max[i] > mmax) {
                mmax = local_max[i];
                marg = local_arg[i];
            }
        }
        cert.per_period_max.push_back(mmax);
        cert.per_period_argmax.push_back(marg);
        if (mmax > cert.max_nonexceptional_exponent) {
            cert.max_nonexceptional_exponent = mmax;
            cert.argmax_word = marg;
        }
    }
    cert.gap_width = cert.min_exceptional_exponent - cert.max_nonexceptional_exponent;
    return cert;
}

PeriodicStats PeriodicStats::build(const SystemParams& params, int n, unsigned workers) {
    if (n < 1 || n > 14) throw std::invalid_argument("PeriodicStats: depth must be in [1,14]");
    PeriodicStats st;
    st.depth = n;
    std::vector<Word> words = enumerate_words(n, kAlphabetAll);
    std::vector<std::vector<double>> byword(words.size());
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= words.size()) break;
            if (is_exceptional(words[i])) continue;
            for (const ExponentRecord& rec : fixed_points_primitive(params, words[i]))
                byword[i].push_back(rec.exponent * n);
        }
    };
    unsigned nthreads = resolve_workers(workers);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    for (auto& v : byword)
        for (double d : v) st.nonexc_D.push_back(d);
    return st;
}

double PeriodicStats::pressure(double t) const {
    LogSumExp acc;
    for (double d : nonexc_D) acc.add(-t * d);
    return acc.value() / depth;
}

TransitionReport locate_transition(const PressureCurve& curve, const SystemParams& params,
                                   double tol, int periodic_depth, unsigned workers) {
    if (curve.t.empty() || curve.t.front() > -20.0 + 1e-9 || curve.t.back() < 2.0 - 1e-9)
        throw std::invalid_argument("locate_transition: curve must span [-20, 2]");
    if (!(tol > 0.0)) throw std::invalid_argument("locate_transition: tol must be positive");

    TransitionReport rep;
    rep.periodic_depth = periodic_depth;
    PeriodicStats per = PeriodicStats::build(params, periodic_depth, workers);
    auto disc = [&](double t) { return per.pressure(t) - lateral_pressure(params, t); };

    // The lateral branch dominates for very negative t; find where the
    // non-exceptional periodic branch overtakes it.
    double a = curve.t.front(), b = a;
    bool bracketed = false;
    for (double t = a + 0.25; t <= curve.t.back() + 1e-9; t += 0.25) {
        if (disc(t) > 0.0) {
            b = t;
            bracketed = true;
            break;
        }
        a = t;
    }
    if (!bracketed || disc(a) > 0.0) {
        rep.kink_found = false;
        return rep;
    }
    while (b - a > tol) {
        double mid = 0.5 * (a + b);
        (disc(mid) > 0.0 ? b : a) = mid;
    }
    double tc = 0.5 * (a + b);
    rep.t_c_estimate = tc;

    auto total = [&](double t) { return std::max(per.pressure(t), lateral_pressure(params, t)); };
    auto rsec = [&](double t0, double h) { return (total(t0 + h) - total(t0)) / h; };
    double s005 = rsec(tc, 0.05);
    double s01 = rsec(tc, 0.10);
    double shift = std::max(std::fabs(rsec(tc + tol, 0.05) - s005),
                            std::fabs(rsec(tc - tol, 0.05) - s005));
    rep.D_minus = lateral_pressure_derivative(params, tc);
    rep.D_plus = s005;
    rep.uncertainty = std::fabs(s01 - s005) + shift;
    rep.beta_c_minus = std::exp(-rep.D_minus);
    rep.beta_c_plus = std::exp(-rep.D_plus);
    rep.entropy_minus = lateral_pressure(params, tc) - tc * rep.D_minus;
    rep.entropy_plus = per.pressure(tc) - tc * rep.D_plus;
    rep.kink_found = rep.D_plus - rep.D_minus > rep.uncertainty;
    return rep;
}

std::pair<double, double> asymptotic_slopes(const PressureCurve& curve) {
    if (curve.t.size() < 3) throw std::invalid_argument("asymptotic_slopes: curve too short");
    if (curve.t.front() > -20.0 + 1e-9 || curve.t.back() < 20.0 - 1e-9)
        throw std::invalid_argument("asymptotic_slopes: curve must span [-20, 20]");
    auto mid = [&](std::size_t i) { return 0.5 * (curve.lower[i] + curve.upper[i]); };
    std::size_t m = curve.t.size();
    double left = (mid(1) - mid(0)) / (curve.t[1] - curve.t[0]);
    double right = (mid(m - 1) - mid(m - 2)) / (curve.t[m - 1] - curve.t[m - 2]);
    return {left, right};
}

CriterionReport transition_criterion(const SystemParams& params, const Potential& potential,
                                     int n, unsigned workers) {
    if (n < 1 || n > 12) throw std::invalid_argument("transition_criterion: n must be in [1,12]");
    CriterionReport rep;

    // infimum of the averaged potential over the lateral set, fiber pinned at 0
    double inf_lat = std::numeric_limits<double>::infinity();
    std::vector<double> starts{0.0};
    std::vector<double> sums(ipow(2, n));
    scan_words(params, n, kAlphabetLateral, starts, potential, workers,
               [&sums](std::size_t idx, double mn, double) { sums[idx] = mn; });
    for (double s : sums) inf_lat = std::min(inf_lat, s / n);
    rep.inf_lateral = inf_lat;

    // supremum of periodic-orbit averages over non-exceptional words
    double sup_off = -std::numeric_limits<double>::infinity();
    for (int m = 1; m <= n; ++m) {
        for (const Word& w : enumerate_words(m, kAlphabetAll)) {
            if (is_exceptional(w)) continue;
            for (const ExponentRecord& rec : fixed_points_primitive(params, w)) {
                Word prefix;
                double x = rec.fixed_point, s = 0.0;
                for (std::size_t j = 0; j < w.size(); ++j) {
                    prefix.push_back(w[j]);
                    s += potential(prefix, x);
                    x = params.map(w[j]).eval(x);
                }
                sup_off = std::max(sup_off, s / m);
            }
        }
    }
    rep.sup_nonexceptional = sup_off;
    rep.holds = rep.inf_lateral > rep.sup_nonexceptional;
    return rep;
}

}  // namespace skewifs
