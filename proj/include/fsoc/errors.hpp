// fsoc-lantern: SNR/BER modeling for photonic-lantern coherent FSO receivers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef FSOC_ERRORS_HPP
#define FSOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fsoc {

/// Base class for runtime numeric failures (as opposed to precondition
/// violations, which throw std::invalid_argument / std::domain_error).
class numeric_error : public std::runtime_error {
  public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative scheme (series summation, adaptive quadrature) hit its
/// iteration budget before reaching the requested tolerance.
class non_convergence_error : public numeric_error {
  public:
    explicit non_convergence_error(const std::string& what) : numeric_error(what) {}
};

/// A rejection sampler's acceptance rate dropped below the stall threshold.
class rejection_stall_error : public numeric_error {
  public:
    explicit rejection_stall_error(const std::string& what) : numeric_error(what) {}
};

/// A Monte-Carlo estimate did not reach the required relative precision.
class insufficient_samples_error : public numeric_error {
  public:
    explicit insufficient_samples_error(const std::string& what) : numeric_error(what) {}
};

}  // namespace fsoc

#endif
