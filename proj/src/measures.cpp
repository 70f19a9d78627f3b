#include "skewifs/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "skewifs/ifs.hpp"

namespace skewifs {

double BernoulliSpec::entropy() const {
    double h = 0.0;
    for (double p : {p0, p1, p2})
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

bool BernoulliSpec::valid(double tol) const {
    return p0 >= 0.0 && p1 >= 0.0 && p2 >= 0.0 && std::fabs(p0 + p1 + p2 - 1.0) <= tol;
}

double AtomicMeasure::total_weight() const {
    double w = 0.0;
    for (const Atom& a : atoms) w += a.weight;
    return w;
}

namespace {

// Settle onto the fiber-interval endpoint reached by iterating `start` under
// h = f_[probe]: forward iteration until the step is small, then a bracketed
// bisection on h(x) - x for the last digits.
double settle_endpoint(const SystemParams& params, const Word& probe, double start) {
    double x = start;
    for (int it = 0; it < 20000; ++it) {
        double x1 = compose_eval(params, probe, x).value;
        double step = x1 - x;
        x = x1;
        if (std::fabs(step) < 1e-7) break;
    }
    auto d = [&](double y) { return compose_eval(params, probe, y).value - y; };
    double dx = d(x);
    if (std::fabs(dx) < 1e-15) return x;
    double a, b, da;
    if (dx > 0.0) {  // still moving up: the fixed point is above x
        a = x;
        da = dx;
        double step = 1e-7;
        b = std::min(1.0, x + step);
        while (b < 1.0 && d(b) > 0.0) {
            step *= 2.0;
            b = std::min(1.0, b + step);
        }
        if (d(b) > 0.0) return 1.0;
    } else {  // moving down: the fixed point is below x
        b = x;
        double step = 1e-7;
        a = std::max(0.0, x - step);
        while (a > 0.0 && d(a) < 0.0) {
            step *= 2.0;
            a = std::max(0.0, a - step);
        }
        da = d(a);
        if (da < 0.0) return 0.0;
    }
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        double mid = 0.5 * (a + b);
        double dm = d(mid);
        if (dm == 0.0) return mid;
        if ((dm > 0.0) == (da > 0.0)) {
            a = mid;
            da = dm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

unsigned resolve_workers(unsigned workers) {
    if (workers) return workers;
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

}  // namespace

AtomicMeasure maxent_approximant(const SystemParams& params, int m, unsigned workers) {
    if (m < 1 || m > 12) throw std::invalid_argument("maxent_approximant: m must be in [1,12]");
    std::vector<Word> words;
    for (Word& w : enumerate_words(m, kAlphabetAll))
        if (!is_exceptional(w)) words.push_back(std::move(w));

    AtomicMeasure mu;
    mu.atoms.resize(words.size() * 2);
    double weight = 1.0 / double(words.size() * 2);
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= words.size()) break;
            const Word& w = words[i];
            Word probe = (count_symbols(w).n1 % 2 == 1) ? w + w : w;
            for (int side = 0; side < 2; ++side) {
                double p = settle_endpoint(params, probe, side == 0 ? 0.0 : 1.0);
                Atom& a = mu.atoms[i * 2 + std::size_t(side)];
                a.word = w;
                a.fiber_point = p;
                a.weight = weight;
                a.exponent =
                    compose_eval(params, probe, p).log_abs_deriv / double(probe.size());
            }
        }
    };
    unsigned nthreads = resolve_workers(workers);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();

    double acc = 0.0;
    for (const Atom& a : mu.atoms) acc += a.weight * a.exponent;
    mu.exponent_avg = acc;
    mu.base_entropy = std::log(double(words.size())) / m;
    return mu;
}

std::pair<AtomicMeasure, AtomicMeasure> horseshoe_pair(const SystemParams& params, int m) {
    if (m < 1 || m > 14) throw std::invalid_argument("horseshoe_pair: m must be in [1,14]");
    std::vector<Word> words = enumerate_words(m, kAlphabetLateral);
    AtomicMeasure mu1, mu2;
    double weight = 1.0 / double(words.size());
    for (const Word& w : words) {
        Atom a2;
        a2.word = w;
        a2.fiber_point = 0.0;
        a2.weight = weight;
        a2.exponent = compose_eval(params, w, 0.0).log_abs_deriv / double(m);
        mu2.atoms.push_back(a2);

        Atom a1;
        a1.word = w;
        a1.fiber_point = settle_endpoint(params, w, 1.0);
        a1.weight = weight;
        a1.exponent = compose_eval(params, w, a1.fiber_point).log_abs_deriv / double(m);
        mu1.atoms.push_back(a1);
    }
    for (AtomicMeasure* mu : {&mu1, &mu2}) {
        double acc = 0.0;
        for (const Atom& a : mu->atoms) acc += a.weight * a.exponent;
        mu->exponent_avg = acc;
        mu->base_entropy = std::log(double(words.size())) / m;
    }
    return {mu1, mu2};
}

double bernoulli_lift_bound(const BernoulliSpec& spec, const SystemParams& params) {
    if (!spec.valid()) throw std::invalid_argument("bernoulli_lift_bound: invalid probabilities");
    return spec.p1 * std::log(params.gamma) +
           (spec.p0 + spec.p2) * std::log(params.beta02_plus());
}

double fiber_triviality_sample(const BernoulliSpec& spec, const SystemParams& params, int samples,
                               int word_len, double tol, std::uint64_t seed) {
    if (!spec.valid()) throw std::invalid_argument("fiber_triviality_sample: invalid spec");
    if (samples < 100) throw std::invalid_argument("fiber_triviality_sample: samples must be >= 100");
    if (word_len < 1) throw std::invalid_argument("fiber_triviality_sample: word_len must be >= 1");
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> pick({spec.p0, spec.p1, spec.p2});
    int trivial = 0;
    for (int s = 0; s < samples; ++s) {
        Word w;
        for (int j = 0; j < word_len; ++j) w.push_back(std::uint8_t(pick(rng)));
        try {
            FiberInterval fi =
                fiber_interval(params, w, std::min(tol * 0.1, 1e-8), 100000);
            if (fi.trivial(tol)) ++trivial;
        } catch (const std::runtime_error&) {
            // iteration cap: endpoints still moving, treat as non-trivial
        }
    }
    return double(trivial) / samples;
}

UniquenessReport uniqueness_check(const SystemParams& params, int m, unsigned workers) {
    UniquenessReport rep;
    double bp = params.beta02_plus();
    rep.gamma_beta_plus_sq = params.gamma * bp * bp;
    rep.applicable = rep.gamma_beta_plus_sq < 1.0;
    if (!rep.applicable) return rep;
    std::vector<int> ms;
    for (int mm : {m - 6, m - 3, m})
        if (mm >= 2 && (ms.empty() || mm > ms.back())) ms.push_back(mm);
    rep.confirms = true;
    for (int mm : ms) {
        AtomicMeasure mu = maxent_approximant(params, mm, workers);
        rep.exponents.emplace_back(mm, mu.exponent_avg);
        if (!(mu.exponent_avg < 0.0)) rep.confirms = false;
    }
    return rep;
}

}  // namespace skewifs
