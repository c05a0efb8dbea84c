#pragma once

#include <stdexcept>
#include <string>

namespace betascore {

/// Broad failure class, used by the CLI to pick an exit code.
enum class ErrorKind {
  Data,     ///< bad input: files, columns, invariant violations
  Numeric,  ///< computation failed: singularity, non-convergence
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

class SingularMatrixError : public NumericError {
 public:
  explicit SingularMatrixError(const std::string& what = "singular matrix")
      : NumericError(what) {}
};

class RankDeficientError : public DataError {
 public:
  explicit RankDeficientError(const std::string& what = "rank-deficient design")
      : DataError(what) {}
};

class NoConvergenceError : public NumericError {
 public:
  explicit NoConvergenceError(const std::string& what = "iteration did not converge")
      : NumericError(what) {}
};

class NotConvergedError : public NumericError {
 public:
  explicit NotConvergedError(const std::string& what = "fit is not converged")
      : NumericError(what) {}
};

class DegenerateFitError : public NumericError {
 public:
  explicit DegenerateFitError(const std::string& what = "degenerate fit: sigma^2 collapsed")
      : NumericError(what) {}
};

class NoRootError : public NumericError {
 public:
  explicit NoRootError(const std::string& what = "no root found") : NumericError(what) {}
};

class NonPositiveVarianceError : public NumericError {
 public:
  explicit NonPositiveVarianceError(const std::string& what = "scedastic variance <= 0")
      : NumericError(what) {}
};

class ZeroVarianceError : public NumericError {
 public:
  explicit ZeroVarianceError(const std::string& what = "zero variance") : NumericError(what) {}
};

class MissingColumnError : public DataError {
 public:
  explicit MissingColumnError(const std::string& column)
      : DataError("missing column: " + column) {}
};

class NonNumericCellError : public DataError {
 public:
  NonNumericCellError(std::size_t row, const std::string& column, const std::string& value)
      : DataError("non-numeric cell at row " + std::to_string(row) + ", column '" + column +
                  "': '" + value + "'") {}
};

}  // namespace betascore
