// Copyright 2026 The QTCNN Bench Authors
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

namespace qtcnn {

/// Invalid configuration (size guards, non-power-of-two layouts, bad flags).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller passed a value that violates an operation contract.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input data cannot support the requested computation.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Object used before it was fitted or trained.
class StateError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Malformed input file. The message carries a file/line/column locator.
class IngestionError : public DataError {
  public:
    using DataError::DataError;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A return series with zero dispersion has no Sharpe ratio.
class DegenerateSeriesError : public std::domain_error {
  public:
    DegenerateSeriesError() : std::domain_error("degenerate series: zero standard deviation") {}
};

}  // namespace qtcnn
