// Copyright 2026 The lpgmfg Authors
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

#ifndef LPGMFG_ERROR_HPP_
#define LPGMFG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lpgmfg {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructor or operation parameter lies outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A graphon was evaluated outside [0,1]^2.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two tables disagree on classes, horizon, states or actions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A transition kernel row is negative or does not sum to one, or forward
// propagation drifted off the simplex by more than the tolerated amount.
class TransitionError : public Error {
 public:
  using Error::Error;
};

// Malformed or semantically invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpgmfg

#endif  // LPGMFG_ERROR_HPP_
