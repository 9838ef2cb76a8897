// Copyright 2026 The posglab Authors.
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

#ifndef POSGLAB_ERRORS_H_
#define POSGLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace posglab {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ZeroProbabilityObservation : public Error {
 public:
  using Error::Error;
};

class ZeroProbabilityHistory : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class NoMinorization : public Error {
 public:
  using Error::Error;
};

class InvalidResidual : public Error {
 public:
  using Error::Error;
};

class AllCensored : public Error {
 public:
  using Error::Error;
};

}  // namespace posglab

#endif  // POSGLAB_ERRORS_H_
