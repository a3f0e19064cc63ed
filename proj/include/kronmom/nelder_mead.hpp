#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

namespace kronmom {

struct NelderMeadOptions {
    /// Stop once every vertex lies within this max-norm distance of the best.
    double diameter_tolerance = 1e-8;
    unsigned max_iterations = 2000;
    /// Edge length of the initial simplex.
    double initial_step = 0.1;
};

template <std::size_t N>
struct NelderMeadResult {
    std::array<double, N> x;
    double value;
    unsigned iterations;
    bool converged;
};

/// Nelder-Mead simplex search restricted to the unit box [0,1]^N. Every
/// trial point is projected onto the box before it is evaluated, so the
/// simplex never leaves the feasible region. Non-finite objective values
/// are treated as +infinity.
template <std::size_t N, class Objective>
NelderMeadResult<N> minimize_in_unit_box(Objective&& objective, std::array<double, N> start,
                                         const NelderMeadOptions& options = {}) {
    using Point = std::array<double, N>;
    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    auto project = [](Point x) {
        for (double& v : x) v = std::clamp(v, 0.0, 1.0);
        return x;
    };
    auto eval = [&](const Point& x) {
        const double v = objective(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };
    auto affine = [&](const Point& from, const Point& to, double t) {
        Point out;
        for (std::size_t d = 0; d < N; ++d) out[d] = from[d] + t * (to[d] - from[d]);
        return project(out);
    };

    std::array<Point, N + 1> simplex;
    std::array<double, N + 1> values;
    simplex[0] = project(start);
    for (std::size_t d = 0; d < N; ++d) {
        Point p = simplex[0];
        p[d] += (p[d] + options.initial_step <= 1.0) ? options.initial_step : -options.initial_step;
        simplex[d + 1] = project(p);
    }
    for (std::size_t k = 0; k <= N; ++k) values[k] = eval(simplex[k]);

    std::array<std::size_t, N + 1> order;
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
        std::array<Point, N + 1> s;
        std::array<double, N + 1> v;
        for (std::size_t k = 0; k <= N; ++k) {
            s[k] = simplex[order[k]];
            v[k] = values[order[k]];
        }
        simplex = s;
        values = v;
    };
    auto diameter = [&] {
        double out = 0.0;
        for (std::size_t k = 1; k <= N; ++k)
            for (std::size_t d = 0; d < N; ++d) out = std::max(out, std::abs(simplex[k][d] - simplex[0][d]));
        return out;
    };

    unsigned iter = 0;
    bool converged = false;
    sort_simplex();
    while (iter < options.max_iterations) {
        if (diameter() < options.diameter_tolerance) {
            converged = true;
            break;
        }
        ++iter;

        Point centroid{};
        for (std::size_t k = 0; k < N; ++k)
            for (std::size_t d = 0; d < N; ++d) centroid[d] += simplex[k][d] / static_cast<double>(N);

        const Point& worst = simplex[N];
        const Point reflected = affine(centroid, worst, -kReflect);
        const double f_reflected = eval(reflected);

        if (f_reflected < values[0]) {
            const Point expanded = affine(centroid, worst, -kExpand);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[N] = expanded;
                values[N] = f_expanded;
            } else {
                simplex[N] = reflected;
                values[N] = f_reflected;
            }
        } else if (f_reflected < values[N - 1]) {
            simplex[N] = reflected;
            values[N] = f_reflected;
        } else {
            bool accepted = false;
            if (f_reflected < values[N]) {
                const Point outside = affine(centroid, reflected, kContract);
                const double f_outside = eval(outside);
                if (f_outside <= f_reflected) {
                    simplex[N] = outside;
                    values[N] = f_outside;
                    accepted = true;
                }
            } else {
                const Point inside = affine(centroid, worst, kContract);
                const double f_inside = eval(inside);
                if (f_inside < values[N]) {
                    simplex[N] = inside;
                    values[N] = f_inside;
                    accepted = true;
                }
            }
            if (!accepted) {
                for (std::size_t k = 1; k <= N; ++k) {
                    simplex[k] = affine(simplex[0], simplex[k], kShrink);
                    values[k] = eval(simplex[k]);
                }
            }
        }
        sort_simplex();
    }
    return {simplex[0], values[0], iter, converged};
}

}  // namespace kronmom
