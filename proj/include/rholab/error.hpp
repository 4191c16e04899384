// Copyright 2026 The rholab developers
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

#pragma once

#include <stdexcept>
#include <string>

namespace rholab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape mismatches, overflow of the configured dimension cap, index ranges.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A value failed its construction invariant (norm, hermiticity, trace, ...).
class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& what) : Error(what) {}
};

/// Bad configuration or input file; the CLI maps this to exit code 2.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// A constant affine form has no unique extremizers on the Bloch sphere.
/// Signaled as its own condition so callers can tell it apart from misuse.
class DegenerateFormError : public Error {
public:
    explicit DegenerateFormError(const std::string& what) : Error(what) {}
};

}  // namespace rholab
