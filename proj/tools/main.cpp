#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "skewifs/conditions.hpp"
#include "skewifs/fiber.hpp"
#include "skewifs/ifs.hpp"
#include "skewifs/measures.hpp"
#include "skewifs/symbolic.hpp"
#include "skewifs/thermo.hpp"

namespace {

constexpr int kExitClaimFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

skewifs::SystemParams params_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open params file: " + path);
    std::map<std::string, double> kv{
        {"beta0", 1.10},  {"lambda0", 0.75}, {"gamma", 0.95},       {"beta2", 1.10},
        {"p2", 0.5},      {"delta", 0.002},  {"f0_theta", 0.05},    {"f0_steepness", 15.0},
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = line.substr(0, line.find('#'));
        if (s.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw UsageError("params line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string v) {
            auto a = v.find_first_not_of(" \t\r");
            auto b = v.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
        };
        std::string key = trim(s.substr(0, eq)), val = trim(s.substr(eq + 1));
        if (!kv.count(key)) throw UsageError("unknown params key: " + key);
        try {
            kv[key] = std::stod(val);
        } catch (const std::exception&) {
            throw UsageError("bad numeric value for " + key + ": " + val);
        }
    }
    try {
        return skewifs::SystemParams::make(kv["beta0"], kv["lambda0"], kv["gamma"], kv["beta2"],
                                           kv["p2"], kv["delta"], kv["f0_theta"],
                                           kv["f0_steepness"]);
    } catch (const std::exception& e) {
        throw UsageError(std::string("invalid parameters: ") + e.what());
    }
}

skewifs::SystemParams resolve_params(const std::string& params_path, const std::string& preset) {
    if (!params_path.empty()) return params_from_file(params_path);
    if (preset == "default-validated") return skewifs::SystemParams::default_validated();
    if (preset == "contracting-lift") return skewifs::SystemParams::contracting_lift();
    throw UsageError("unknown preset: " + preset +
                     " (available: default-validated, contracting-lift)");
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw UsageError("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

void emit_header(std::ostream& os, const std::string& command,
                 const skewifs::SystemParams& p, const std::string& extra) {
    os << "# command=" << command << "\n";
    os << "# beta0=" << p.beta0 << " lambda0=" << p.lambda0 << " gamma=" << p.gamma
       << " beta2=" << p.beta2 << " p2=" << p.p2 << " delta=" << p.delta
       << " f0_theta=" << p.f0_theta << " f0_steepness=" << p.f0_steepness << "\n";
    if (!extra.empty()) os << "# " << extra << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skew-product IFS pressure and measure experiments"};
    app.require_subcommand(1);

    std::string params_path, preset = "default-validated", out_path;
    int depth = 12, max_period = 10;
    double t_min = -20.0, t_max = 2.0, t_step = 0.05, tol = 1e-3;
    std::uint64_t seed = 20260826ull;
    unsigned workers = 0;
    int budget = 2000, samples = 200, grid = 10000;

    app.add_option("--params", params_path, "flat key=value parameter file");
    app.add_option("--preset", preset, "named parameter preset")->capture_default_str();
    app.add_option("--depth", depth, "cylinder depth n")->capture_default_str();
    app.add_option("--max-period", max_period, "periodic-orbit depth m")->capture_default_str();
    app.add_option("--t-min", t_min)->capture_default_str();
    app.add_option("--t-max", t_max)->capture_default_str();
    app.add_option("--t-step", t_step)->capture_default_str();
    app.add_option("--tol", tol, "tolerance (meaning is per-command)")->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    app.add_option("--workers", workers, "0 = hardware concurrency")->capture_default_str();
    app.add_option("--out", out_path, "write output to file instead of stdout");

    auto* c_validate = app.add_subcommand("validate", "check all parameter conditions");
    c_validate->add_option("--grid", grid, "grid resolution")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    auto* c_search = app.add_subcommand("search", "random search for feasible parameters");
    c_search->add_option("--budget", budget, "candidate budget")->capture_default_str();
    auto* c_pressure = app.add_subcommand("pressure", "pressure brackets over a t-grid (CSV)");
    auto* c_spectrum = app.add_subcommand("spectrum", "periodic exponent scan + gap certificate");
    auto* c_transition = app.add_subcommand("transition", "locate the phase transition");
    auto* c_measures = app.add_subcommand("measures", "measure-family reports");
    c_measures->add_option("--samples", samples, "Monte-Carlo sample count (min 100)")
        ->capture_default_str()
        ->check(CLI::Range(100, 10000000));
    auto* c_itinerary = app.add_subcommand("itinerary", "build an expanding itinerary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        skewifs::SystemParams p = resolve_params(params_path, preset);
        Output out;
        out.open(out_path);
        std::ostream& os = out.stream();
        os << std::setprecision(15);

        if (c_validate->parsed()) {
            skewifs::ValidationReport rep = skewifs::validate(p, grid);
            emit_header(os, "validate", p, "grid=" + std::to_string(grid));
            os << rep.to_text();
            return rep.all_pass() ? 0 : kExitClaimFailure;
        }

        if (c_search->parsed()) {
            skewifs::ParamBox box;
            box.beta0 = {1.05, 1.15};
            box.lambda0 = {0.70, 0.90};
            box.gamma = {0.90, 0.97};
            box.beta2 = {1.05, 1.15};
            box.p2 = {0.3, 0.7};
            box.delta = {0.001, 0.01};
            auto found = skewifs::search_feasible(box, budget, seed);
            emit_header(os, "search", p,
                        "budget=" + std::to_string(budget) + " seed=" + std::to_string(seed));
            for (const auto& q : found) {
                os << "beta0=" << q.beta0 << "\nlambda0=" << q.lambda0 << "\ngamma=" << q.gamma
                   << "\nbeta2=" << q.beta2 << "\np2=" << q.p2 << "\ndelta=" << q.delta
                   << "\nf0_theta=" << q.f0_theta << "\nf0_steepness=" << q.f0_steepness << "\n";
            }
            if (found.empty()) {
                os << "no feasible point found within budget\n";
                return kExitClaimFailure;
            }
            return 0;
        }

        if (c_pressure->parsed()) {
            auto curve = skewifs::compute_curve(p, t_min, t_max, t_step, depth, workers);
            std::ostringstream meta;
            meta << "depth=" << depth << " t_min=" << t_min << " t_max=" << t_max
                 << " t_step=" << t_step;
            emit_header(os, "pressure", p, meta.str());
            os << "t,lower,upper,lateral,secant_left,secant_right\n";
            for (std::size_t i = 0; i < curve.t.size(); ++i)
                os << curve.t[i] << ',' << curve.lower[i] << ',' << curve.upper[i] << ','
                   << curve.lateral[i] << ',' << curve.secant_left[i] << ','
                   << curve.secant_right[i] << "\n";
            return 0;
        }

        if (c_spectrum->parsed()) {
            auto cert = skewifs::spectrum_scan(p, max_period, workers);
            emit_header(os, "spectrum", p, "max_period=" + std::to_string(max_period));
            os << "period,word,exponent,exceptional\n";
            for (std::size_t i = 0; i < cert.per_period_max.size(); ++i)
                os << (i + 1) << ',' << cert.per_period_argmax[i].str() << ','
                   << cert.per_period_max[i] << ",0\n";
            os << "# max_nonexceptional_exponent=" << cert.max_nonexceptional_exponent << "\n";
            os << "# argmax_word=" << cert.argmax_word.str() << "\n";
            os << "# min_exceptional_exponent=" << cert.min_exceptional_exponent << "\n";
            os << "# gap_width=" << cert.gap_width << "\n";
            os << "# valid=" << (cert.valid() ? 1 : 0) << "\n";
            return cert.valid() ? 0 : kExitClaimFailure;
        }

        if (c_transition->parsed()) {
            auto curve = skewifs::compute_curve(p, t_min, t_max, t_step, depth, workers);
            auto rep = skewifs::locate_transition(curve, p, tol, max_period, workers);
            std::ostringstream meta;
            meta << "depth=" << depth << " periodic_depth=" << max_period << " tol=" << tol;
            emit_header(os, "transition", p, meta.str());
            os << "kink_found=" << (rep.kink_found ? 1 : 0) << "\n";
            os << "t_c_estimate=" << rep.t_c_estimate << "\n";
            os << "D_minus=" << rep.D_minus << "\n";
            os << "D_plus=" << rep.D_plus << "\n";
            os << "uncertainty=" << rep.uncertainty << "\n";
            os << "beta_c_minus=" << rep.beta_c_minus << "\n";
            os << "beta_c_plus=" << rep.beta_c_plus << "\n";
            os << "entropy_minus=" << rep.entropy_minus << "\n";
            os << "entropy_plus=" << rep.entropy_plus << "\n";
            return rep.kink_found ? 0 : kExitClaimFailure;
        }

        if (c_measures->parsed()) {
            std::ostringstream meta;
            meta << "max_period=" << max_period << " samples=" << samples << " seed=" << seed;
            emit_header(os, "measures", p, meta.str());
            for (int m : {6, 9, std::min(max_period, 12)}) {
                auto mu = skewifs::maxent_approximant(p, m, workers);
                os << "maxent m=" << m << " exponent_avg=" << mu.exponent_avg
                   << " base_entropy=" << mu.base_entropy << "\n";
            }
            auto pair = skewifs::horseshoe_pair(p, max_period);
            os << "horseshoe m=" << max_period << " chi_mu1=" << pair.first.exponent_avg
               << " chi_mu2=" << pair.second.exponent_avg
               << " half_log_beta0beta2=" << 0.5 * std::log(p.beta0 * p.beta2) << "\n";
            skewifs::BernoulliSpec uni{1.0 / 3, 1.0 / 3, 1.0 / 3};
            os << "bernoulli_lift_bound=" << skewifs::bernoulli_lift_bound(uni, p) << "\n";
            double frac = skewifs::fiber_triviality_sample(p.gamma * p.beta02_plus() *
                                                                       p.beta02_plus() <
                                                                   1.0
                                                               ? uni
                                                               : skewifs::BernoulliSpec{0, 1, 0},
                                                           p, samples, 60, 1e-6, seed);
            os << "fiber_trivial_fraction=" << frac << "\n";
            auto urep = skewifs::uniqueness_check(p, std::min(max_period, 12), workers);
            os << "uniqueness_applicable=" << (urep.applicable ? 1 : 0)
               << " gamma_beta_plus_sq=" << urep.gamma_beta_plus_sq << "\n";
            return 0;
        }

        if (c_itinerary->parsed()) {
            double b = p.delta;
            double lo = p.f0.invert(p.f0.invert(b));
            emit_header(os, "itinerary", p, "");
            auto it = skewifs::expanding_itinerary(p, lo, b, b);
            os << "word_length=" << it.word.size() << "\n";
            os << "kappa_est=" << it.kappa_est << "\n";
            os << "fixed_point=" << it.fixed_point << "\n";
            os << "J=[" << it.j_lo << "," << it.j_hi << "]\n";
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitClaimFailure;
    }
    return kExitUsage;
}
