// Copyright 2026 The cilvr Authors
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

namespace cilvr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (S <= 0, sigma <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The fee rate does not exceed the carry r*K of the strike.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// An iterative solver hit its iteration cap or lost its bracket.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A target is outside the range an inversion can reach.
class NoSolutionError : public Error {
public:
    using Error::Error;
};

/// Invalid simulation or run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A chained strip left a price in [a, b] without an activated strike.
class TilingError : public Error {
public:
    using Error::Error;
};

/// No sampled path left the band before the simulation horizon.
class HorizonError : public Error {
public:
    using Error::Error;
};

}  // namespace cilvr
