#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meancurv {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function evaluated to NaN or infinity during quadrature or differencing.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : Error(what), abscissa_(abscissa) {}
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

/// Parameter outside a surface's domain, vanishing area element or a
/// collapsed contour tangent.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Malformed mesh or field text. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

/// Structurally parsed input that violates a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operation refused because the vertex star is not closed.
class BoundaryUnsupportedError : public Error {
 public:
  explicit BoundaryUnsupportedError(int vertex)
      : Error("vertex " + std::to_string(vertex) +
              " lies on the boundary; its star is not closed"),
        vertex_(vertex) {}
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

/// Flow step produced a triangle below the minimum area.
class CollapseError : public Error {
 public:
  CollapseError(const std::string& what, int step, int face, double area)
      : Error(what), step_(step), face_(face), area_(area) {}
  int step() const { return step_; }
  int face() const { return face_; }
  double area() const { return area_; }

 private:
  int step_;
  int face_;
  double area_;
};

}  // namespace meancurv
