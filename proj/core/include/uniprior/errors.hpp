#pragma once

#include <stdexcept>
#include <string>

namespace uniprior {

/* Input failed a documented precondition (bad symbol, bad weight, ...). */
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Operation needs exact arithmetic the model cannot supply. */
class UnsupportedBackendError : public std::runtime_error {
public:
  explicit UnsupportedBackendError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Conditioning event has probability zero. */
class UndefinedConditionalError : public std::runtime_error {
public:
  explicit UndefinedConditionalError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Continuation mass is zero, nothing to normalize. */
class UndefinedNormalizationError : public std::runtime_error {
public:
  explicit UndefinedNormalizationError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Bad experiment configuration (unknown key, out-of-range value, oversize job). */
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace uniprior
