#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace distprod {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested derivative order exceeds what a function was built to supply.
class OrderExceeded : public Error {
 public:
  OrderExceeded(int requested, int available)
      : Error("derivative order " + std::to_string(requested) +
              " exceeds declared maximum " + std::to_string(available)),
        requested_(requested),
        available_(available) {}
  int requested() const { return requested_; }
  int available() const { return available_; }

 private:
  int requested_;
  int available_;
};

class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class CatalogError : public Error {
 public:
  using Error::Error;
};

// Evaluation at y <= 0 is forbidden: the representatives are only defined
// strictly off the real axis.
class RegulatorError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& msg, std::complex<double> partial,
                  double error_estimate)
      : Error(msg), partial_(partial), error_estimate_(error_estimate) {}
  std::complex<double> partial() const { return partial_; }
  double error_estimate() const { return error_estimate_; }

 private:
  std::complex<double> partial_;
  double error_estimate_;
};

// Thrown when a pairing neither converges nor shows a clean power law.
class InconclusiveError : public Error {
 public:
  InconclusiveError(const std::string& msg, std::vector<double> y,
                    std::vector<std::complex<double>> values)
      : Error(msg), y_(std::move(y)), values_(std::move(values)) {}
  const std::vector<double>& y() const { return y_; }
  const std::vector<std::complex<double>>& values() const { return values_; }

 private:
  std::vector<double> y_;
  std::vector<std::complex<double>> values_;
};

class NotExtendable : public Error {
 public:
  using Error::Error;
};

class ExtensionFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownAtom : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace distprod
