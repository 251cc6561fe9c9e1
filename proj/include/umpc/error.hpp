// Copyright 2026 The umpc Authors
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

#ifndef UMPC_ERROR_HPP_
#define UMPC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace umpc {

// Base of every error raised by the library. `kind()` is a stable short tag
// used by the CLI for its machine-parsable error line.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Caller violated a documented precondition (bad arguments, mismatched
// party lists, m > C(n,k), ...).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

// A value does not fit the fixed-point representation or would wrap.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error("range", what) {}
};

// Debug-mode check on generated noise magnitude.
class WrapRiskError : public RangeError {
 public:
  explicit WrapRiskError(const std::string& what) : RangeError(what) {}
};

// Kernel input outside the kernel's domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

// A randomized procedure exhausted its retry budget. Retrying with a fresh
// seed is expected to succeed.
class SamplingFailure : public Error {
 public:
  explicit SamplingFailure(const std::string& what)
      : Error("sampling_failure", what) {}
};

// Brute-force enumeration would exceed the desk-scale guard.
class ScaleError : public Error {
 public:
  explicit ScaleError(const std::string& what) : Error("scale", what) {}
};

class UnsupportedKernel : public Error {
 public:
  explicit UnsupportedKernel(const std::string& what)
      : Error("unsupported_kernel", what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse", what) {}
};

}  // namespace umpc

#endif  // UMPC_ERROR_HPP_
