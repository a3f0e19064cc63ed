#include "kronmom/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "kronmom/errors.hpp"
#include "kronmom/nelder_mead.hpp"
#include "kronmom/parallel.hpp"
#include "kronmom/philox.hpp"

namespace kronmom {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Candidate ordering used by every search: objective first, then the
// lexicographically smallest (a, b, c).
struct Candidate {
    double objective = kInf;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    bool better_than(const Candidate& other) const {
        return std::tie(objective, a, b, c) < std::tie(other.objective, other.a, other.b, other.c);
    }
};

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

double score(double a, double b, double c, unsigned r, const ObjectiveSpec& spec, const FeatureCounts& obs) {
    return finite_or_inf(objective_from_expected(expected_features(KroneckerParams(a, b, c, r)), spec, obs));
}

FitResult make_result(const KroneckerParams& params, const ObjectiveSpec& spec, const FeatureCounts& obs,
                      FitMethod method, double elapsed) {
    FitResult out{.params = params};
    auto detailed = evaluate_objective_detailed(params, spec, obs);
    out.objective_value = detailed.value;
    out.warnings = std::move(detailed.warnings);
    out.expected = expected_features(params);
    for (Feature f : kAllFeatures) {
        const double observed = static_cast<double>(obs[f]);
        out.feature_ratios[static_cast<std::size_t>(f)] =
            observed == 0.0 ? std::numeric_limits<double>::quiet_NaN() : out.expected[f] / observed;
    }
    out.method = method;
    out.chosen_method = method;
    out.elapsed_seconds = elapsed;
    if (spec.features.size() == 3) {
        for (Feature f : kAllFeatures) {
            if (spec.features.contains(f)) continue;
            out.held_out = f;
            out.held_out_ratio = out.feature_ratios[static_cast<std::size_t>(f)];
        }
    }
    return out;
}

}  // namespace

std::string_view fit_method_name(FitMethod m) {
    switch (m) {
        case FitMethod::direct: return "direct";
        case FitMethod::grid: return "grid";
        case FitMethod::leading: return "leading";
        case FitMethod::best: return "best";
    }
    return "?";
}

std::optional<FitMethod> parse_fit_method(std::string_view name) {
    if (name == "direct") return FitMethod::direct;
    if (name == "grid") return FitMethod::grid;
    if (name == "leading") return FitMethod::leading;
    if (name == "best") return FitMethod::best;
    return std::nullopt;
}

LeadingTransforms leading_transforms(const FeatureCounts& obs, unsigned r) {
    if (r == 0) throw std::invalid_argument("lead-term transforms need r >= 1");
    LeadingTransforms t;
    const double inv_r = 1.0 / static_cast<double>(r);
    t.e = std::pow(2.0 * static_cast<double>(obs.edges), inv_r);
    t.h = std::pow(2.0 * static_cast<double>(obs.hairpins), inv_r);
    t.delta = std::pow(6.0 * static_cast<double>(obs.triangles), inv_r);
    t.t = std::pow(6.0 * static_cast<double>(obs.tripins), inv_r);

    const double disc = 2.0 * t.h - t.e * t.e;
    if (disc >= 0.0 && t.e >= std::sqrt(disc)) {
        const double root = std::sqrt(disc);
        t.x = (t.e + root) / 2.0;
        t.y = (t.e - root) / 2.0;
        t.feasible = true;
    } else {
        t.x = t.y = std::numeric_limits<double>::quiet_NaN();
    }
    return t;
}

bool lead_terms_feasible(const FeatureCounts& obs, unsigned r) {
    using u128 = unsigned __int128;
    if (r > KroneckerParams::kMaxPower) throw std::invalid_argument("r out of range");
    const u128 two_h = u128{obs.hairpins} * 2;
    const u128 four_e2 = u128{obs.edges} * obs.edges * 4;
    const u128 scaled_h = u128{obs.hairpins} << (r + 1);
    return two_h <= four_e2 && four_e2 <= scaled_h;
}

FitResult fit_grid(const FeatureCounts& obs, unsigned r, const ObjectiveSpec& spec, const GridOptions& options) {
    spec.validate(true);
    if (options.points_per_dim == 0) throw std::invalid_argument("grid needs points_per_dim >= 1");
    const auto start = Clock::now();
    const unsigned m = options.points_per_dim;
    auto level = [m](unsigned k) { return static_cast<double>(k) / static_cast<double>(m); };

    std::vector<Candidate> best_for_a(m + 1);
    parallel_for(m + 1, options.workers, [&](std::size_t ia) {
        Candidate best;
        const double a = level(static_cast<unsigned>(ia));
        for (unsigned ib = 0; ib <= m; ++ib) {
            const double b = level(ib);
            for (unsigned ic = 0; ic <= ia; ++ic) {
                const Candidate cand{score(a, b, level(ic), r, spec, obs), a, b, level(ic)};
                if (cand.better_than(best)) best = cand;
            }
        }
        best_for_a[ia] = best;
    });

    Candidate best;
    for (const auto& cand : best_for_a) {
        if (cand.better_than(best)) best = cand;
    }
    return make_result(KroneckerParams(best.a, best.b, best.c, r), spec, obs, FitMethod::grid,
                       seconds_since(start));
}

FitResult fit_direct(const FeatureCounts& obs, unsigned r, const ObjectiveSpec& spec, const DirectOptions& options) {
    spec.validate(true);
    if (options.starts == 0) throw std::invalid_argument("direct search needs at least one start");
    const auto start = Clock::now();

    NelderMeadOptions nm;
    nm.diameter_tolerance = options.diameter_tolerance;
    nm.max_iterations = options.max_iterations;

    auto objective = [&](const std::array<double, 3>& x) { return score(x[0], x[1], x[2], r, spec, obs); };

    std::vector<Candidate> per_start(options.starts);
    parallel_for(options.starts, options.workers, [&](std::size_t s) {
        std::array<double, 3> x0;
        for (std::size_t k = 0; k < 3; ++k) x0[k] = counter_uniform(options.seed, s, 0xD1EC7ull + k);
        if (x0[0] < x0[2]) std::swap(x0[0], x0[2]);
        const auto local = minimize_in_unit_box<3>(objective, x0, nm);
        // Canonical representative; the objective is invariant under the swap.
        const KroneckerParams p(local.x[0], local.x[1], local.x[2], r);
        per_start[s] = {score(p.a(), p.b(), p.c(), r, spec, obs), p.a(), p.b(), p.c()};
    });

    Candidate best;
    for (const auto& cand : per_start) {
        if (cand.better_than(best)) best = cand;
    }
    if (!std::isfinite(best.objective)) {
        throw FitError("direct search: the objective was non-finite at every point reached from " +
                       std::to_string(options.starts) + " starts");
    }
    return make_result(KroneckerParams(best.a, best.b, best.c, r), spec, obs, FitMethod::direct,
                       seconds_since(start));
}

FitResult fit_leading(const FeatureCounts& obs, unsigned r, const ObjectiveSpec& spec, const LeadingOptions& options) {
    spec.validate(false);
    if (obs.edges == 0 || obs.hairpins == 0 || obs.triangles == 0) {
        throw std::invalid_argument("lead-term matching needs positive edge, hairpin and triangle counts");
    }
    if (!(options.b_step > 0.0 && options.b_step <= 1.0)) throw std::invalid_argument("b_step must be in (0, 1]");
    const auto start = Clock::now();

    const LeadingTransforms t = leading_transforms(obs, r);
    if (!t.feasible) {
        throw InfeasibleError(
            "lead-term equations for edges and hairpins do not have real valued solutions: need h <= e^2 <= 2h "
            "(degree variance at least the mean degree); got e^2 = " +
            std::to_string(t.e * t.e) + ", h = " + std::to_string(t.h));
    }

    const auto steps = static_cast<unsigned>(std::llround(1.0 / options.b_step));
    struct Match {
        double mismatch = kInf;
        double a = 0.0, b = 0.0, c = 0.0;
    } best;
    for (unsigned k = 0; k <= steps; ++k) {
        const double b = static_cast<double>(k) / static_cast<double>(steps);
        const double a = std::clamp(t.x - b, 0.0, 1.0);
        const double c = std::clamp(t.y - b, 0.0, 1.0);
        const double mismatch = std::abs(a * a * a + c * c * c + 3.0 * b * b * (a + c) - t.delta);
        if (std::tie(mismatch, a, b, c) < std::tie(best.mismatch, best.a, best.b, best.c)) {
            best = {mismatch, a, b, c};
        }
    }
    return make_result(KroneckerParams(best.a, best.b, best.c, r), spec, obs, FitMethod::leading,
                       seconds_since(start));
}

FitResult fit_best(const FeatureCounts& obs, unsigned r, const ObjectiveSpec& spec, const FitOptions& options) {
    spec.validate(true);
    const auto start = Clock::now();

    std::vector<MethodDiagnostic> diagnostics;
    std::optional<FitResult> best;
    auto attempt = [&](FitMethod method, auto&& run) {
        MethodDiagnostic diag{.method = method};
        const auto t0 = Clock::now();
        try {
            FitResult res = run();
            diag.succeeded = true;
            diag.params = res.params;
            diag.objective_value = res.objective_value;
            diag.elapsed_seconds = res.elapsed_seconds;
            const Candidate cand{finite_or_inf(res.objective_value), res.params.a(), res.params.b(), res.params.c()};
            if (!best || cand.better_than(Candidate{finite_or_inf(best->objective_value), best->params.a(),
                                                    best->params.b(), best->params.c()})) {
                best = std::move(res);
            }
        } catch (const InfeasibleError& e) {
            diag.error = e.what();
        } catch (const FitError& e) {
            diag.error = e.what();
        } catch (const std::invalid_argument& e) {
            if (method != FitMethod::leading) throw;
            diag.error = e.what();
        }
        if (!diag.succeeded) diag.elapsed_seconds = seconds_since(t0);
        diagnostics.push_back(std::move(diag));
    };

    attempt(FitMethod::direct, [&] { return fit_direct(obs, r, spec, options.direct); });
    attempt(FitMethod::grid, [&] { return fit_grid(obs, r, spec, options.grid); });
    attempt(FitMethod::leading, [&] { return fit_leading(obs, r, spec, options.leading); });

    if (!best) {
        std::string why;
        for (const auto& d : diagnostics) why += std::string(fit_method_name(d.method)) + ": " + d.error + "; ";
        throw FitError("every fitting procedure failed: " + why);
    }
    FitResult out = std::move(*best);
    out.chosen_method = out.method;
    out.method = FitMethod::best;
    out.diagnostics = std::move(diagnostics);
    out.elapsed_seconds = seconds_since(start);
    return out;
}

FitResult fit_partial(const FeatureCounts& obs, unsigned r, const ObjectiveSpec& spec, const FitOptions& options) {
    if (spec.features.size() != 3) {
        throw std::invalid_argument("partial fits use exactly three features, got " +
                                    std::to_string(spec.features.size()));
    }
    return fit_best(obs, r, spec, options);
}

FitResult fit(FitMethod method, const FeatureCounts& obs, unsigned r, const ObjectiveSpec& spec,
              const FitOptions& options) {
    switch (method) {
        case FitMethod::direct: return fit_direct(obs, r, spec, options.direct);
        case FitMethod::grid: return fit_grid(obs, r, spec, options.grid);
        case FitMethod::leading: return fit_leading(obs, r, spec, options.leading);
        case FitMethod::best: return fit_best(obs, r, spec, options);
    }
    throw std::invalid_argument("unknown fit method");
}

}  // namespace kronmom
