#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace affrig {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different fields.
class DescriptorMismatch : public Error {
 public:
  using Error::Error;
};

/// Vector or matrix shapes do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed input: non-prime modulus, singular pairing, wrong side, ...
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A precondition of one of the rigidity propositions does not hold.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// psi(<u,.>) is not constant on a target subspace (u is not in its annihilator).
class ConstancyViolation : public Error {
 public:
  using Error::Error;
};

/// A distribution fails a support or Fourier-support requirement.
class SupportViolation : public Error {
 public:
  using Error::Error;
};

/// No separating vector exists for two cosets that were assumed distinct.
class CertificateNotFound : public Error {
 public:
  using Error::Error;
};

/// Two independently computed quantities that must agree did not.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

/// The arrangement contains a thick pair; indices refer to the input arrangements.
class ThickPairPresent : public Error {
 public:
  ThickPairPresent(std::size_t x_index, std::size_t y_index)
      : Error("thick pair present: (X[" + std::to_string(x_index) + "], Y[" +
              std::to_string(y_index) + "])"),
        x_index_(x_index),
        y_index_(y_index) {}

  std::size_t x_index() const noexcept { return x_index_; }
  std::size_t y_index() const noexcept { return y_index_; }

 private:
  std::size_t x_index_;
  std::size_t y_index_;
};

/// An avoiding-family search failed. `exhausted` means the whole candidate
/// space was enumerated, which certifies that no family exists for this p.
class ModelTooSmall : public Error {
 public:
  ModelTooSmall(std::uint32_t p, bool exhausted, const std::string& where)
      : Error("avoiding family not found (" + where + ") over F_" + std::to_string(p) +
              (exhausted ? "; search space exhausted" : "; search budget exhausted") +
              "; try a larger prime"),
        p_(p),
        exhausted_(exhausted) {}

  std::uint32_t p() const noexcept { return p_; }
  bool exhausted() const noexcept { return exhausted_; }

 private:
  std::uint32_t p_;
  bool exhausted_;
};

}  // namespace affrig
