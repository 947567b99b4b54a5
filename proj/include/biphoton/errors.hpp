// Copyright 2026 The Biphoton Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

/// Bad user-supplied parameter (config field, precondition on an argument).
/// The CLI maps this to exit code 1.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A computation could not produce a trustworthy number. The CLI maps this
/// to exit code 2.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Fock basis or evolved state grew past the configured size cap.
class BasisOverflow : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

/// Nonlinear fringe/dip fit failed to converge or left a residual above the
/// acceptance threshold. A flat scan is not a failure.
class FitError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

}  // namespace biphoton
