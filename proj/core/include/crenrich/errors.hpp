#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crenrich {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateTriangle : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class PointOutsideMesh : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDegree : public Error {
 public:
  using Error::Error;
};

class InadmissibleFunctionals : public Error {
 public:
  using Error::Error;
};

class UnknownFunction : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Wraps a per-triangle failure with the index of the offending triangle.
class TriangleError : public Error {
 public:
  TriangleError(std::size_t triangle, const std::string& what)
      : Error("triangle " + std::to_string(triangle) + ": " + what), triangle_(triangle) {}
  std::size_t triangle() const noexcept { return triangle_; }

 private:
  std::size_t triangle_;
};

}  // namespace crenrich
