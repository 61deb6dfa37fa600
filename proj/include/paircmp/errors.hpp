#pragma once

#include <stdexcept>
#include <string>

namespace paircmp {

// Base type for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownModel : Error {
  explicit UnknownModel(const std::string& name)
      : Error("unknown model: " + name) {}
};

struct InvalidParameter : Error {
  using Error::Error;
};

struct OutcomeNotInSupport : Error {
  explicit OutcomeNotInSupport(double x)
      : Error("outcome " + std::to_string(x) + " is not in the support") {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct VertexOutOfRange : Error {
  VertexOutOfRange(int v, int n)
      : Error("vertex " + std::to_string(v) + " out of range [0," +
              std::to_string(n) + ")") {}
};

struct SelfComparison : Error {
  using Error::Error;
};

struct InvalidProbability : Error {
  using Error::Error;
};

struct InvalidAlpha : Error {
  explicit InvalidAlpha(double a)
      : Error("alpha must lie in (0,1), got " + std::to_string(a)) {}
};

struct ZeroDegree : Error {
  explicit ZeroDegree(int v)
      : Error("vertex " + std::to_string(v) + " has no comparisons") {}
};

struct IsolatedVertex : Error {
  explicit IsolatedVertex(int v)
      : Error("vertex " + std::to_string(v) + " is isolated") {}
};

struct DisconnectedGraph : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct UnrecognizedScore : Error {
  explicit UnrecognizedScore(const std::string& s)
      : Error("unrecognized match score: \"" + s + "\"") {}
};

struct ConfigInvalid : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

// Raised when a grid-based computation is requested for a model whose
// support is continuous and which provides no exact shortcut.
struct UnsupportedForContinuousSupport : Error {
  using Error::Error;
};

}  // namespace paircmp
