#include "skewifs/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace skewifs {
namespace {

constexpr double kIdentityTol = 1e-5;

double grid_point(double lo, double hi, int i, int n) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
}

} // namespace

bool ValidationReport::all_pass() const {
    for (const auto& c : clauses)
        if (!c.pass) return false;
    return !clauses.empty();
}

double ValidationReport::min_slack() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : clauses) m = std::min(m, c.slack);
    return m;
}

const Clause* ValidationReport::find(const std::string& name) const {
    for (const auto& c : clauses)
        if (c.name == name) return &c;
    return nullptr;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : clauses) {
        os << (c.pass ? "pass" : "FAIL") << "  ";
        os.setf(std::ios::scientific);
        os.precision(6);
        os << c.slack << "  " << c.name << "\n";
        os.unsetf(std::ios::scientific);
    }
    return os.str();
}

DerivedConstants derive_constants(const SystemParams& p, int grid_resolution) {
    const int n = std::max(grid_resolution, 1000);
    DerivedConstants d;
    d.delta_prime = 1.0 - p.delta / p.gamma;

    // beta' = max of f0', f2' on [delta, 1]; both profiles are decreasing,
    // but scan anyway (the validator, not this routine, certifies shape)
    double bp = 0;
    for (int i = 0; i <= n; ++i) {
        const double x = grid_point(p.delta, 1.0, i, n);
        bp = std::max(bp, std::max(p.f0.deriv(x), p.f2.deriv(x)));
    }
    d.beta_prime = bp;

    double bh = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double x = grid_point(0.0, p.delta, i, n);
        bh = std::min(bh, std::min(p.f0.deriv(x), p.f2.deriv(x)));
    }
    d.beta_H = bh;
    if (!(d.beta_H > 1.0))
        throw std::domain_error("derive_constants: beta_H <= 1, no expansion on H");

    double lp = 0;
    for (int i = 0; i <= n; ++i)
        lp = std::max(lp, p.f0.deriv(grid_point(d.delta_prime, 1.0, i, n)));
    d.lambda_prime = lp;

    const double bound = 4.0 * std::fabs(std::log(p.lambda0)) *
                         std::log(p.beta02_plus()) /
                         (std::log(d.beta_H) * std::log(d.beta_prime));
    d.L = static_cast<int>(std::floor(bound)) + 1;
    return d;
}

ValidationReport validate(const SystemParams& p, int grid_resolution,
                          double margin) {
    if (grid_resolution < 1000)
        throw std::invalid_argument("validate: grid_resolution must be >= 1000");
    const int n = grid_resolution;
    ValidationReport rep;
    auto ineq = [&](const std::string& name, double slack) {
        rep.clauses.push_back({name, slack >= margin, slack});
    };
    auto ident = [&](const std::string& name, double err) {
        rep.clauses.push_back({name, std::fabs(err) <= kIdentityTol,
                               kIdentityTol - std::fabs(err)});
    };

    // ---- basic parameter ranges
    ineq("param: beta0 > 1", p.beta0 - 1.0);
    ineq("param: lambda0 in (0,1)", std::min(p.lambda0, 1.0 - p.lambda0));
    ineq("param: gamma in (0,1)", std::min(p.gamma, 1.0 - p.gamma));
    ineq("param: beta2 > 1", p.beta2 - 1.0);
    ineq("param: p2 in (0,1)", std::min(p.p2, 1.0 - p.p2));
    ineq("param: delta > 0", p.delta);

    // ---- (F0)
    ident("F0: f0(0) = 0", p.f0.eval(0.0));
    ident("F0: f0(1) = 1", p.f0.eval(1.0) - 1.0);
    ident("F0: f0'(0) = beta0", p.f0.deriv(0.0) - p.beta0);
    ident("F0: f0'(1) = lambda0", p.f0.deriv(1.0) - p.lambda0);
    {
        // strict monotonicity of f0 and strict decrease of f0', both as
        // per-unit-x rates over the grid
        double min_rate = std::numeric_limits<double>::infinity();
        double min_drop = std::numeric_limits<double>::infinity();
        double min_above_lambda0 = std::numeric_limits<double>::infinity();
        const double h = 1.0 / n;
        double prev_v = p.f0.eval(0.0), prev_d = p.f0.deriv(0.0);
        for (int i = 1; i <= n; ++i) {
            const double x = grid_point(0.0, 1.0, i, n);
            const double v = p.f0.eval(x), d = p.f0.deriv(x);
            min_rate = std::min(min_rate, (v - prev_v) / h);
            min_drop = std::min(min_drop, (prev_d - d) / h);
            if (x < 1.0)
                min_above_lambda0 =
                    std::min(min_above_lambda0, (d - p.lambda0) / (1.0 - x));
            prev_v = v; prev_d = d;
        }
        ineq("F0: f0 strictly increasing (min rate)", min_rate);
        ineq("F0: f0' strictly decreasing (min drop rate)", min_drop);
        ineq("F0: f0' >= lambda0 (normalized margin)", min_above_lambda0);
    }

    // ---- (F1)
    ineq("F1: gamma >= lambda0", p.gamma - p.lambda0);
    ident("F1: f1(1) = 0", p.f1.eval(1.0));
    ident("F1: f1(p1) = p1", p.f1.eval(p.p1()) - p.p1());
    {
        double err = 0;
        for (int i = 0; i <= 100; ++i) {
            const double x = grid_point(0.0, 1.0, i, 100);
            err = std::max(err, std::fabs(p.f1.eval(x) - p.gamma * (1.0 - x)));
            err = std::max(err, std::fabs(p.f1.deriv(x) + p.gamma));
        }
        ident("F1: affine with slope -gamma", err);
    }

    // ---- (F2)
    ident("F2: f2(0) = 0", p.f2.eval(0.0));
    ident("F2: f2'(0) = beta2", p.f2.deriv(0.0) - p.beta2);
    ident("F2: f2(p2) = p2", p.f2.eval(p.p2) - p.p2);
    ineq("F2: p2 attracting (1 - |f2'(p2)|)", 1.0 - std::fabs(p.f2.deriv(p.p2)));
    ineq("F2: f2(1) < 1", 1.0 - p.f2.eval(1.0));
    {
        double min_rate = std::numeric_limits<double>::infinity();
        const double h = 1.0 / n;
        double prev = p.f2.eval(0.0);
        for (int i = 1; i <= n; ++i) {
            const double v = p.f2.eval(grid_point(0.0, 1.0, i, n));
            min_rate = std::min(min_rate, (v - prev) / h);
            prev = v;
        }
        ineq("F2: f2 strictly increasing (min rate)", min_rate);
    }

    // ---- central derivative cap: f0', f2' <= beta02_plus, margin as a
    // per-unit-x rate from 0 (equality holds exactly at x = 0)
    {
        const double bp = p.beta02_plus();
        double min_margin = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= n; ++i) {
            const double x = grid_point(0.0, 1.0, i, n);
            const double d = std::max(p.f0.deriv(x), p.f2.deriv(x));
            min_margin = std::min(min_margin, (bp - d) / x);
        }
        ineq("F012: f0',f2' <= beta02_plus (normalized margin)", min_margin);
    }

    // ---- (F01)
    const double f01 = p.gamma * p.lambda0 * p.lambda0 * p.lambda0 *
                       (1.0 - p.lambda0) / (1.0 - 1.0 / p.beta0);
    ineq("F01: gamma*lambda0^3*(1-lambda0)/(1-1/beta0) > 1", f01 - 1.0);

    // ---- (F012)
    DerivedConstants d;
    bool have_d = true;
    try {
        d = derive_constants(p, grid_resolution);
    } catch (const std::domain_error&) {
        have_d = false;
        rep.clauses.push_back({"F012: beta_H > 1", false, -1.0});
    }
    if (have_d) {
        const double bm = p.beta02_minus(), bp = p.beta02_plus();
        ineq("F012: beta_H > 1", d.beta_H - 1.0);
        // interval disjointness, H = [0,delta], H' = [delta',1]
        ineq("F012: f1(H) disjoint from H", p.gamma * (1.0 - p.delta) - p.delta);
        ineq("F012: f1(H') disjoint from H'", d.delta_prime - p.delta);
        ineq("F012: f1([0,1]) disjoint from H'", d.delta_prime - p.gamma);
        ineq("F012: f2([0,1]) disjoint from H'", d.delta_prime - p.f2.eval(1.0));
        ineq("F012: beta' < beta02_minus", bm - d.beta_prime);
        ineq("F012: beta_H < beta02_minus", bm - d.beta_H);
        ineq("F012: lambda' < 1", 1.0 - d.lambda_prime);
        // |log l0| * log b+ / log bH - |log l'| + (2/3) log b+ < (3/4) log b'
        const double lhs = std::fabs(std::log(p.lambda0)) * std::log(bp) /
                               std::log(d.beta_H) -
                           std::fabs(std::log(d.lambda_prime)) +
                           (2.0 / 3.0) * std::log(bp);
        ineq("F012: derivative-budget inequality", 0.75 * std::log(d.beta_prime) - lhs);
        const double lbound = 4.0 * std::fabs(std::log(p.lambda0)) * std::log(bp) /
                              (std::log(d.beta_H) * std::log(d.beta_prime));
        ineq("F012: L strictly above its bound", static_cast<double>(d.L) - lbound);
        ineq("F012: log(beta+^L * gamma)/(L+1) < log beta'",
             std::log(d.beta_prime) -
                 (d.L * std::log(bp) + std::log(p.gamma)) / (d.L + 1.0));
    }

    return rep;
}

namespace {

struct BoxView {
    const ParamBox::Range* r[6];
    explicit BoxView(const ParamBox& b)
        : r{&b.beta0, &b.lambda0, &b.gamma, &b.beta2, &b.p2, &b.delta} {}
    bool empty() const {
        for (auto* x : r)
            if (!(x->hi >= x->lo)) return true;
        return false;
    }
};

SystemParams from_vec(const double v[6]) {
    return SystemParams::make(v[0], v[1], v[2], v[3], v[4], v[5]);
}

// total shortfall below the margin, 0 when all-pass
double deficit(const double v[6], int grid, double margin) {
    try {
        const auto rep = validate(from_vec(v), grid, margin);
        double s = 0;
        for (const auto& c : rep.clauses)
            if (!c.pass) s += (margin - c.slack);
        return s;
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace

std::vector<SystemParams> search_feasible(const ParamBox& box, int budget,
                                          std::uint64_t seed) {
    std::vector<SystemParams> found;
    if (budget < 1) return found;
    BoxView bv(box);
    if (bv.empty()) return found;

    std::mt19937_64 rng(seed);
    const int grid = 2000; // coarse validation while searching
    const double margin = 1e-6;
    int evals = 0;

    const int samples = std::max(1, (budget * 7) / 10);
    // latin hypercube: one stratum per coordinate per sample
    std::vector<std::vector<int>> strata(6, std::vector<int>(samples));
    for (auto& col : strata) {
        for (int i = 0; i < samples; ++i) col[static_cast<size_t>(i)] = i;
        std::shuffle(col.begin(), col.end(), rng);
    }
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    double best_v[6] = {0, 0, 0, 0, 0, 0};
    double best_deficit = std::numeric_limits<double>::infinity();

    for (int i = 0; i < samples && evals < budget; ++i) {
        double v[6];
        for (int k = 0; k < 6; ++k) {
            const double u = (strata[static_cast<size_t>(k)][static_cast<size_t>(i)] + uni(rng)) / samples;
            v[k] = bv.r[k]->lo + u * (bv.r[k]->hi - bv.r[k]->lo);
        }
        if (v[2] < v[1]) continue; // gamma >= lambda0 or the bundle is ill-formed
        const double def = deficit(v, grid, margin);
        ++evals;
        if (def == 0.0) {
            found.push_back(from_vec(v));
            if (static_cast<int>(found.size()) >= budget) return found;
        } else if (def < best_deficit) {
            best_deficit = def;
            for (int k = 0; k < 6; ++k) best_v[k] = v[k];
        }
    }

    // coordinate descent from the best near-miss
    if (found.empty() && std::isfinite(best_deficit)) {
        double v[6];
        for (int k = 0; k < 6; ++k) v[k] = best_v[k];
        double step = 0.25;
        while (evals < budget && best_deficit > 0.0) {
            bool improved = false;
            for (int k = 0; k < 6 && evals < budget; ++k) {
                const double span = bv.r[k]->hi - bv.r[k]->lo;
                for (double dir : {+1.0, -1.0}) {
                    if (evals >= budget) break;
                    double trial[6];
                    for (int j = 0; j < 6; ++j) trial[j] = v[j];
                    trial[k] = std::clamp(v[k] + dir * step * span,
                                          bv.r[k]->lo, bv.r[k]->hi);
                    if (trial[2] < trial[1]) continue;
                    const double def = deficit(trial, grid, margin);
                    ++evals;
                    if (def < best_deficit) {
                        best_deficit = def;
                        for (int j = 0; j < 6; ++j) v[j] = trial[j];
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) {
                step *= 0.5;
                if (step < 1e-4) break;
            }
            if (best_deficit == 0.0) found.push_back(from_vec(v));
        }
    }

    // final confirmation at full resolution
    std::vector<SystemParams> confirmed;
    for (const auto& cand : found)
        if (validate(cand, 10000, margin).all_pass()) confirmed.push_back(cand);
    return confirmed;
}

} // namespace skewifs
