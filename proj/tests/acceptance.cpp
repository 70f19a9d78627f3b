// End-to-end acceptance gate: one pass/fail line per criterion, all checks
// always on.  Exit code 0 only if every criterion holds.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <random>

#include "skewifs/conditions.hpp"
#include "skewifs/fiber.hpp"
#include "skewifs/ifs.hpp"
#include "skewifs/measures.hpp"
#include "skewifs/symbolic.hpp"
#include "skewifs/thermo.hpp"

#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            std::exit(1);                                                       \
        }                                                                       \
    } while (0)

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void pass(int k, const std::string& what, Clock::time_point t0) {
    std::cout << "criterion " << k << " PASS  (" << seconds_since(t0) << " s)  " << what << "\n";
}

}  // namespace

int main() {
    using namespace skewifs;
    const SystemParams p = SystemParams::default_validated();
    std::cout.precision(10);

    // ---- 1: exact entropy anchors at t = 0
    {
        auto t0 = Clock::now();
        for (int n : {1, 4, 8, 12}) {
            auto [lo, hi] = pressure_bracket(p, 0.0, n);
            REQUIRE(std::fabs(lo - std::log(3.0)) < 1e-12, "lower(0) != log 3 at n=" << n);
            REQUIRE(std::fabs(hi - std::log(3.0)) < 1e-12, "upper(0) != log 3 at n=" << n);
        }
        REQUIRE(std::fabs(lateral_pressure(p, 0.0) - std::log(2.0)) < 1e-12,
                "lateral(0) != log 2");
        pass(1, "entropy anchors log3 / log2", t0);
    }

    // ---- 2: lateral-pressure linearity for beta0 = beta2
    {
        auto t0 = Clock::now();
        REQUIRE(p.beta0 == p.beta2, "default preset must have beta0 == beta2");
        double lb = std::log(p.beta0);
        for (int i = 0; i < 1000; ++i) {
            double t = -40.0 + 80.0 * i / 999.0;
            REQUIRE(std::fabs(lateral_pressure(p, t) - (std::log(2.0) - t * lb)) < 1e-12,
                    "lateral not linear at t=" << t);
        }
        pass(2, "lateral pressure linear in t", t0);
    }

    // ---- 3: condition feasibility via the searcher, slack >= 1e-6
    {
        auto t0 = Clock::now();
        ValidationReport rep = validate(p, 10000);
        for (const Clause& c : rep.clauses)
            REQUIRE(c.pass, "default instance fails: " << c.name << " slack " << c.slack);
        REQUIRE(rep.min_slack() >= 1e-6, "default slack below 1e-6: " << rep.min_slack());
        ParamBox box;
        box.beta0 = {1.08, 1.12};
        box.lambda0 = {0.73, 0.78};
        box.gamma = {0.93, 0.96};
        box.beta2 = {1.08, 1.12};
        box.p2 = {0.4, 0.6};
        box.delta = {0.0015, 0.003};
        auto found = search_feasible(box, 120, 20260826ull);
        REQUIRE(!found.empty(), "search_feasible found nothing in the default box");
        ValidationReport rf = validate(found.front(), 10000);
        REQUIRE(rf.all_pass() && rf.min_slack() >= 1e-6,
                "searched instance lacks slack: " << rf.min_slack());
        pass(3, "all clauses pass with slack >= 1e-6 (searched + shipped)", t0);
    }

    // ---- 4: spectral gap, exhaustive to period 10, stable from 8 to 10
    GapCertificate cert;
    {
        auto t0 = Clock::now();
        cert = spectrum_scan(p, 10);
        REQUIRE(cert.valid(), "gap certificate invalid, gap=" << cert.gap_width);
        REQUIRE(cert.max_nonexceptional_exponent < cert.min_exceptional_exponent,
                "non-exceptional exponent reaches the lateral band");
        double cum8 = -1e300, cum10 = cert.max_nonexceptional_exponent;
        for (int m = 1; m <= 8; ++m) cum8 = std::max(cum8, cert.per_period_max[m - 1]);
        REQUIRE(cum10 - cum8 >= 0.0, "estimate not monotone in depth");
        REQUIRE(cum10 - cum8 <= 5e-3,
                "estimate unstable from m=8 to m=10: " << cum8 << " -> " << cum10);
        std::cout << "    gap_width = " << cert.gap_width
                  << ", max nonexc = " << cert.max_nonexceptional_exponent << " at word "
                  << cert.argmax_word.str() << "\n";
        pass(4, "spectral gap certified at m=10", t0);
    }

    // ---- 5: convexity within bracket slack + domination
    PressureCurve curve;
    {
        auto t0 = Clock::now();
        curve = compute_curve(p, -20.0, 2.0, 0.05, 12);
        const double h = 0.05;
        auto width = [&](std::size_t i) { return curve.upper[i] - curve.lower[i]; };
        for (std::size_t i = 1; i + 1 < curve.t.size(); ++i) {
            double slack =
                (width(i - 1) + 2 * width(i) + width(i + 1)) / (h * h);
            for (const auto* env : {&curve.lower, &curve.upper}) {
                double s1 = ((*env)[i] - (*env)[i - 1]) / h;
                double s2 = ((*env)[i + 1] - (*env)[i]) / h;
                REQUIRE(s2 - s1 >= -slack,
                        "secant slopes decrease beyond slack at t=" << curve.t[i]);
            }
            REQUIRE(curve.lateral[i] <= curve.upper[i] + width(i) + 1e-12,
                    "lateral pressure exceeds the upper envelope at t=" << curve.t[i]);
        }
        pass(5, "convex envelopes, lateral dominated", t0);
    }

    // ---- 6: first-order phase transition with the right geometry
    {
        auto t0 = Clock::now();
        TransitionReport rep = locate_transition(curve, p, 1e-3, 10);
        REQUIRE(rep.kink_found, "no kink detected");
        REQUIRE(rep.t_c_estimate < 0.0, "t_c not negative: " << rep.t_c_estimate);
        REQUIRE(rep.D_minus >= -std::log(p.beta02_plus()) - 1e-9,
                "D_minus below -log beta+: " << rep.D_minus);
        REQUIRE(rep.D_minus <= -std::log(p.beta02_minus()) + 1e-9,
                "D_minus above -log beta-: " << rep.D_minus);
        REQUIRE(rep.D_plus >= -cert.max_nonexceptional_exponent - 1e-9,
                "D_plus below -log beta~: " << rep.D_plus);
        REQUIRE(rep.D_plus - rep.D_minus > rep.uncertainty,
                "kink smaller than uncertainty: " << rep.D_plus - rep.D_minus << " vs "
                                                  << rep.uncertainty);
        REQUIRE(rep.entropy_minus > 0.0, "entropy_minus not positive");
        REQUIRE(rep.entropy_plus > rep.entropy_minus, "entropies not ordered");
        std::cout << "    t_c = " << rep.t_c_estimate << ", D- = " << rep.D_minus
                  << ", D+ = " << rep.D_plus << " (+/- " << rep.uncertainty
                  << "), h- = " << rep.entropy_minus << ", h+ = " << rep.entropy_plus << "\n";
        pass(6, "phase transition located", t0);
    }

    // ---- 7: asymptotic slopes within bracket-width / step
    {
        auto t0 = Clock::now();
        PressureCurve wide = compute_curve(p, -20.0, 20.0, 0.5, 10);
        auto [left, right] = asymptotic_slopes(wide);
        double wl = (wide.upper.front() - wide.lower.front()) / 0.5;
        double wr = (wide.upper.back() - wide.lower.back()) / 0.5;
        REQUIRE(std::fabs(left - (-std::log(p.beta02_plus()))) <= wl,
                "slope at t=-20 off: " << left);
        REQUIRE(std::fabs(right - (-std::log(p.lambda0))) <= wr,
                "slope at t=+20 off: " << right);
        // right secant at 0 from the dense curve of criterion 5
        std::size_t i0 = 0;
        while (i0 < curve.t.size() && curve.t[i0] < -1e-9) ++i0;
        REQUIRE(i0 + 1 < curve.t.size() && std::fabs(curve.t[i0]) < 1e-9, "t=0 not on grid");
        double mid0 = 0.5 * (curve.lower[i0] + curve.upper[i0]);
        double mid1 = 0.5 * (curve.lower[i0 + 1] + curve.upper[i0 + 1]);
        double rsec = (mid1 - mid0) / 0.05;
        double w1 = (curve.upper[i0 + 1] - curve.lower[i0 + 1]) / 0.05;
        REQUIRE(rsec <= w1, "right secant at 0 positive beyond width: " << rsec);
        pass(7, "asymptotic slopes and D+P(0) <= 0", t0);
    }

    // ---- 8: measure constructions
    {
        auto t0 = Clock::now();
        double prev = 0.0;
        for (int m : {6, 9, 12}) {
            AtomicMeasure mu = maxent_approximant(p, m);
            REQUIRE(mu.exponent_avg <= 1e-9,
                    "maxent exponent positive at m=" << m << ": " << mu.exponent_avg);
            REQUIRE(mu.base_entropy > prev && mu.base_entropy < std::log(3.0),
                    "base entropy not climbing toward log 3 at m=" << m);
            prev = mu.base_entropy;
        }
        auto [mu1, mu2] = horseshoe_pair(p, 10);
        REQUIRE(mu1.exponent_avg <= 1e-12, "chi(mu1) > 0");
        REQUIRE(mu2.exponent_avg > 0.0, "chi(mu2) <= 0");
        REQUIRE(std::fabs(mu2.exponent_avg - 0.5 * std::log(p.beta0 * p.beta2)) <= 1e-9,
                "chi(mu2) != half log(beta0 beta2)");
        SystemParams c = SystemParams::contracting_lift();
        REQUIRE(c.gamma * c.beta02_plus() * c.beta02_plus() < 1.0,
                "secondary preset not in the contracting regime");
        BernoulliSpec uni{1.0 / 3, 1.0 / 3, 1.0 / 3};
        double frac = fiber_triviality_sample(uni, c, 200, 60, 1e-6);
        REQUIRE(frac >= 0.99, "trivial-fiber fraction too small: " << frac);
        pass(8, "maxent / horseshoe / triviality constructions", t0);
    }

    // ---- 9: proof-mechanics property suite on simulated orbits
    {
        auto t0 = Clock::now();
        DerivedConstants d = derive_constants(p, 10000);
        std::mt19937_64 rng(20260826ull);
        std::uniform_int_distribution<int> runlen(60, 140);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        long returns = 0;
        for (int orbit = 0; orbit < 10000; ++orbit) {
            Word w;
            while (w.size() < 500) {
                for (int k = runlen(rng); k > 0 && w.size() < 500; --k) w.push_back(0);
                w.push_back(uni(rng) < 0.7 ? 1 : 2);
            }
            double x0 = uni(rng);
            ReturnAnalysis ra = analyze_returns(p, w, x0, p.delta, d.delta_prime);
            REQUIRE(ra.structure_ok, "structural return facts violated on orbit " << orbit);
            for (const ReturnBlock& b : ra.blocks) {
                ++returns;
                // long dwells near 1 push 1-x below the spacing of doubles at
                // 1.0; allow a few ulps at scale 1 for the accumulated rounding
                REQUIRE(b.p_entry >= std::pow(p.lambda0, double(b.N + 1)) * p.delta -
                                         8.0 * std::numeric_limits<double>::epsilon(),
                        "entry-depth claim fails at orbit " << orbit << " r=" << b.r);
                REQUIRE(b.block_avg < std::log(d.beta_prime),
                        "block-average claim fails at orbit " << orbit << " r=" << b.r);
            }
        }
        REQUIRE(returns >= 10000, "too few recorded returns: " << returns);
        double b = p.delta;
        double jmin = p.f0.invert(p.f0.invert(b));
        for (int trial = 0; trial < 100; ++trial) {
            double a1 = jmin + (b - jmin) * uni(rng);
            double a2 = jmin + (b - jmin) * uni(rng);
            double lo = std::min(a1, a2), hi = std::max(a1, a2);
            if (hi - lo < 1e-6) {
                lo = jmin;
                hi = b;
            }
            ExpandingItinerary it = expanding_itinerary(p, lo, hi, b);
            REQUIRE(it.kappa_est > 1.0, "kappa <= 1 on trial " << trial);
            auto r = compose_eval(p, it.word, it.fixed_point);
            REQUIRE(std::fabs(r.value - it.fixed_point) < 1e-10,
                    "itinerary fixed point drifts on trial " << trial);
            REQUIRE(std::exp(r.log_abs_deriv) > 1.0, "fixed point not repelling");
        }
        std::cout << "    recorded returns: " << returns << "\n";
        pass(9, "return claims + expanding itineraries", t0);
    }

    // ---- 10: oracle equivalence
    {
        auto t0 = Clock::now();
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            double a[3] = {uni(rng), uni(rng), uni(rng)};
            double t = 2.0 * uni(rng);
            Potential cyl = [&a](const Word& w, double) { return a[w[w.size() - 1]]; };
            double hand =
                std::log(std::exp(t * a[0]) + std::exp(t * a[1]) + std::exp(t * a[2]));
            for (int n = 1; n <= 6; ++n) {
                auto [lo, hi] = general_potential_pressure(p, cyl, t, n);
                REQUIRE(std::fabs(lo - hand) < 1e-10, "1-cylinder lower oracle off at n=" << n);
                REQUIRE(std::fabs(hi - hand) < 1e-10, "1-cylinder upper oracle off at n=" << n);
            }
        }
        std::uniform_int_distribution<int> len(1, 8), sym(0, 2);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 100000; ++trial) {
            Word u, v;
            for (int i = len(rng); i > 0; --i) u.push_back(std::uint8_t(sym(rng)));
            for (int i = len(rng); i > 0; --i) v.push_back(std::uint8_t(sym(rng)));
            double x = unit(rng);
            auto ru = compose_eval(p, u, x);
            auto rv = compose_eval(p, v, ru.value);
            auto rw = compose_eval(p, u + v, x);
            REQUIRE(std::fabs(rw.value - rv.value) < 1e-10, "composition value split fails");
            REQUIRE(std::fabs(rw.log_abs_deriv - (ru.log_abs_deriv + rv.log_abs_deriv)) < 1e-10,
                    "chain rule split fails");
        }
        pass(10, "transfer-sum and chain-rule oracles", t0);
    }

    std::cout << "all criteria PASS\n";
    return 0;
}
