#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qesb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConservingHamiltonian : public Error {
 public:
  using Error::Error;
};

// A conserving H mapped a block state outside its own block.
class BlockClosureViolation : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class UnsupportedTermShape : public Error {
 public:
  using Error::Error;
};

class BandStructureUnsupported : public Error {
 public:
  using Error::Error;
};

class DegreeOutsidePhysicalSector : public Error {
 public:
  using Error::Error;
};

class InvalidOrder : public Error {
 public:
  using Error::Error;
};

class InvalidCharge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class GridTooCoarse : public Error {
 public:
  GridTooCoarse(const std::string& what, double discrepancy)
      : Error(what), discrepancy_(discrepancy) {}
  double discrepancy() const noexcept { return discrepancy_; }

 private:
  double discrepancy_;
};

}  // namespace qesb
