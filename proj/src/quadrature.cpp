// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "fsoc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "fsoc/errors.hpp"

namespace fsoc::quadrature {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Interval {
    double a, b;
    double value;
    double error;
};

bool worse(const Interval& lhs, const Interval& rhs) { return lhs.error < rhs.error; }

Interval gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    double resabs = std::fabs(fc) * kWgk[7];

    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        result_kronrod += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }

    const double value = result_kronrod * h;
    double err = std::fabs((result_kronrod - result_gauss) * h);
    // QUADPACK-style sharpening of the raw |K15 - G7| estimate.
    const double scale = resabs * std::fabs(h);
    if (scale > 0.0 && err > 0.0)
        err = scale * std::min(1.0, std::pow(200.0 * err / scale, 1.5));
    return {a, b, value, err};
}

Result run(const std::function<double(double)>& f, const std::vector<double>& edges,
           const Options& opts) {
    std::priority_queue<Interval, std::vector<Interval>, decltype(&worse)> queue(&worse);

    double total = 0.0;
    double total_err = 0.0;
    long evals = 0;

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Interval iv = gauss_kronrod_15(f, edges[i], edges[i + 1]);
        evals += 15;
        total += iv.value;
        total_err += iv.error;
        queue.push(iv);
    }

    int n_intervals = static_cast<int>(edges.size()) - 1;
    while (total_err > std::max(opts.rel_tol * std::fabs(total), opts.abs_tol)) {
        if (n_intervals >= opts.max_intervals)
            throw non_convergence_error("adaptive quadrature: interval budget exhausted");
        Interval worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw non_convergence_error("adaptive quadrature: interval underflow");
        Interval left = gauss_kronrod_15(f, worst.a, mid);
        Interval right = gauss_kronrod_15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++n_intervals;
    }

    return {total, total_err, evals};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts) {
    if (!(a < b)) throw std::invalid_argument("quadrature: requires a < b");
    return run(f, {a, b}, opts);
}

Result integrate_segmented(const std::function<double(double)>& f,
                           const std::vector<double>& breakpoints, const Options& opts) {
    if (breakpoints.size() < 2)
        throw std::invalid_argument("quadrature: need at least two breakpoints");
    std::vector<double> edges(breakpoints);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() < 2) throw std::invalid_argument("quadrature: degenerate breakpoint list");
    return run(f, edges, opts);
}

}  // namespace fsoc::quadrature
