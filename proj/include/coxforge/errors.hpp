#pragma once

#include <stdexcept>
#include <string>

namespace coxforge {

/// Invalid input: out-of-range rank, malformed graph, mismatched lengths.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or truncation cap was hit before the computation finished.
/// Subclasses carry whatever partial result was available.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The graph is outside what the construction is defined for
/// (e.g. more than one branch node, or a node of valence four).
class UnsupportedGraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A reduction step was requested outside the hypotheses of its dimension formula.
class HypothesisError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal identity that must hold exactly failed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace coxforge
