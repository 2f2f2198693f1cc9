#pragma once

#include <stdexcept>
#include <string>

namespace mmif {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed verifier call: wrong arity, wrong element kinds, or invalid
/// bounds. Distinct from a failed Verdict so that a broken parameter file
/// can never masquerade as a model failure.
class ParamError : public Error {
 public:
  using Error::Error;
};

/// Verifier name not present in the registry.
class UnknownFunctionError : public ParamError {
 public:
  using ParamError::ParamError;
};

/// Invalid configuration: missing credential, unusable client config.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input record or file failed validation (strict mode).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Generation or judging failed at run time (transport, exhausted retries,
/// unavailable control response).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Strict stub mode: no fixture record matched a request.
class FixtureMissError : public EvalError {
 public:
  using EvalError::EvalError;
};

}  // namespace mmif
