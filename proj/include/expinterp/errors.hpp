#pragma once

#include <stdexcept>
#include <string>

namespace expinterp {

// Argument outside the mathematical domain of an operation (x <= 0, empty set, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// An operation's documented precondition does not hold for otherwise valid input.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// The exponent set has no generators, so it is bounded and has no limit directions.
class BoundedSetError : public PreconditionError {
 public:
  explicit BoundedSetError(const std::string& what) : PreconditionError(what) {}
};

class UnreachableDirectionError : public PreconditionError {
 public:
  explicit UnreachableDirectionError(const std::string& what) : PreconditionError(what) {}
};

class TiedExtremePointError : public PreconditionError {
 public:
  explicit TiedExtremePointError(const std::string& what) : PreconditionError(what) {}
};

// Malformed node set / problem description.
class ConfigurationError : public std::invalid_argument {
 public:
  explicit ConfigurationError(const std::string& what) : std::invalid_argument(what) {}
};

// Enumeration or grid caps exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace expinterp
