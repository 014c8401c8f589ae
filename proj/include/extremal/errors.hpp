#pragma once

#include <stdexcept>
#include <string>

namespace extremal {

/// Input violates a documented precondition (bad n, non-positive length, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vertex list does not describe a valid (weakly) convex polygon.
class InvalidPolygon : public std::runtime_error {
 public:
  InvalidPolygon(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Composition does not close into a star polygon, or is malformed.
class InvalidSignature : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConstructionDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedDocument : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace extremal
