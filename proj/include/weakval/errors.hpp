// Copyright 2026 The weakval Authors
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

namespace weakval {

/// Broad failure classes. The CLI maps each one to its own exit status.
enum class ErrorKind {
    kInput,              // malformed or inconsistent arguments
    kPhysicsUndefined,   // e.g. orthogonal pre/post selection
    kNumericalGuard,     // grid, convergence or dimension guards
    kNoAcceptedRuns,     // Monte Carlo produced nothing to estimate from
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

struct InputError : Error {
    explicit InputError(const std::string &what) : Error(ErrorKind::kInput, what) {}
};

/// Weak value is undefined because |<Phi|Psi>| is at or below the orthogonality threshold.
struct UndefinedWeakValue : Error {
    explicit UndefinedWeakValue(const std::string &what) : Error(ErrorKind::kPhysicsUndefined, what) {}
};

/// Post-selected branch carries no numerically representable probability.
struct PostSelectionImpossible : Error {
    explicit PostSelectionImpossible(const std::string &what) : Error(ErrorKind::kPhysicsUndefined, what) {}
};

struct GridGuardError : Error {
    explicit GridGuardError(const std::string &what) : Error(ErrorKind::kNumericalGuard, what) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string &what) : Error(ErrorKind::kNumericalGuard, what) {}
};

struct DimensionCapError : Error {
    explicit DimensionCapError(const std::string &what) : Error(ErrorKind::kNumericalGuard, what) {}
};

struct NoAcceptedRuns : Error {
    explicit NoAcceptedRuns(const std::string &what) : Error(ErrorKind::kNoAcceptedRuns, what) {}
};

}  // namespace weakval
