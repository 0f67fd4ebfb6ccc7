// Copyright 2026 The pptlocc Authors
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

#ifndef PPTLOCC_ERRORS_HPP
#define PPTLOCC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pptlocc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or declared dimensions do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix is well-formed but is not a physical state (or gate).
class PhysicalityError : public Error {
 public:
  using Error::Error;
};

/// A dense oracle or brute-force sum would exceed its size guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Shot noise pushed root recovery past the imaginary-part cap.
class EstimationTooNoisy : public Error {
 public:
  using Error::Error;
};

/// The circuit oracle produced inconsistent calibration constants.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pptlocc

#endif  // PPTLOCC_ERRORS_HPP
