#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rrsyt {

// Base of every error thrown by the library. The CLI maps these to exit
// status 1; usage problems are reported by the CLI itself with status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidShape : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Raised when an accumulator slice would not fit into the memory budget.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::uint64_t requested_bytes)
      : Error(what), requested_bytes_(requested_bytes) {}
  std::uint64_t requested_bytes() const { return requested_bytes_; }

 private:
  std::uint64_t requested_bytes_;
};

// Not enough sequence terms for the requested operation.
class ShortfallError : public Error {
 public:
  ShortfallError(const std::string& what, std::size_t required)
      : Error(what), required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

// Brute-force enumeration refused because the instance is too large.
class SizeError : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

}  // namespace rrsyt
