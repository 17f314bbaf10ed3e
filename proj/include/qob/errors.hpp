// Copyright 2026 The qobath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// errors.hpp: exception types shared by every qob module

#pragma once

#include <stdexcept>
#include <string>

namespace qob {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operand shapes do not fit the requested operation.
struct DimensionError : Error {
    using Error::Error;
};

// A matrix required to be Hermitian deviates beyond tolerance.
struct NotHermitianError : Error {
    using Error::Error;
};

// A 2x2 input is not a valid density matrix (trace, positivity, Hermiticity).
struct InvalidStateError : Error {
    using Error::Error;
};

// Physical or numerical parameters out of their admissible range.
struct InvalidParamsError : Error {
    using Error::Error;
};

// Trace or Hermiticity of the root density operator drifted during integration.
struct InvariantBreachError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, int last_depth, double last_discrepancy)
        : Error(what), last_depth(last_depth), last_discrepancy(last_discrepancy) {}
    int last_depth;
    double last_discrepancy;
};

}  // namespace qob
