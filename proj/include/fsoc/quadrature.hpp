// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_QUADRATURE_HPP
#define FSOC_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace fsoc::quadrature {

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 20000;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (G7/K15) quadrature on [a, b].
/// Keeps a worst-first queue of subintervals and bisects until the summed
/// error estimate meets max(rel_tol * |value|, abs_tol).
/// Throws non_convergence_error when the interval budget is exhausted.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

/// Same, but with interior breakpoints seeding the initial subdivision
/// (useful when the integrand has known scales, e.g. 1/gamma_bar).
Result integrate_segmented(const std::function<double(double)>& f,
                           const std::vector<double>& breakpoints, const Options& opts = {});

}  // namespace fsoc::quadrature

#endif
