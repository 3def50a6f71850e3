#pragma once

#include <stdexcept>
#include <string>

namespace pgc {

/// Base class for all recoverable errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Graph ingestion
class MalformedLineError : public Error {
 public:
  using Error::Error;
};
class SelfLoopError : public Error {
 public:
  using Error::Error;
};
class EmptyGraphError : public Error {
 public:
  using Error::Error;
};
class InvalidPartitionError : public Error {
 public:
  using Error::Error;
};

// Linear algebra / embedding
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};
class DegreeZeroError : public Error {
 public:
  using Error::Error;
};
class EigensolveFailureError : public Error {
 public:
  using Error::Error;
};

// Coreset / clustering
class EmptyCoresetError : public Error {
 public:
  using Error::Error;
};
class InsufficientPointsError : public Error {
 public:
  using Error::Error;
};
class InsufficientCandidatesError : public Error {
 public:
  using Error::Error;
};
class LabelMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace pgc
