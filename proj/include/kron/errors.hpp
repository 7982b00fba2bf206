#pragma once

#include <stdexcept>
#include <string>

namespace kron {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPSD : Error {
  explicit NotPSD(const std::string& msg) : Error(msg) {}
};
struct NotPD : Error {
  explicit NotPD(const std::string& msg) : Error(msg) {}
};
struct DimensionGuard : Error {
  explicit DimensionGuard(const std::string& msg) : Error(msg) {}
};
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};
struct DegenerateColumn : Error {
  explicit DegenerateColumn(const std::string& msg) : Error(msg) {}
};
struct DegenerateRow : Error {
  explicit DegenerateRow(const std::string& msg) : Error(msg) {}
};
struct NotConverged : Error {
  double residual;
  NotConverged(const std::string& msg, double res) : Error(msg), residual(res) {}
};
struct SingularInput : Error {
  explicit SingularInput(const std::string& msg) : Error(msg) {}
};
struct TooManyEdges : Error {
  explicit TooManyEdges(const std::string& msg) : Error(msg) {}
};
struct DimensionTooSmall : Error {
  explicit DimensionTooSmall(const std::string& msg) : Error(msg) {}
};
struct InvalidEdge : Error {
  explicit InvalidEdge(const std::string& msg) : Error(msg) {}
};
struct ZeroTruth : Error {
  explicit ZeroTruth(const std::string& msg) : Error(msg) {}
};
struct FoldTooSmall : Error {
  explicit FoldTooSmall(const std::string& msg) : Error(msg) {}
};
struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace kron
