#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace orlicz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: out-of-range parameters, non-finite data, malformed files.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Base for failures of a numerical method on otherwise valid input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class BracketFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MomentDivergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RankDeficient : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CalibrationFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The (distribution, psi) pair has no closed-form norm.
class UnsupportedPair : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A Monte Carlo replication failed; carries the coordinates to rerun it.
class ReplicationFailure : public Error {
 public:
  ReplicationFailure(std::size_t n, std::size_t replication, std::uint64_t seed,
                     const std::string& cause)
      : Error("replication failed at n=" + std::to_string(n) + ", j=" +
              std::to_string(replication) + ", seed=" + std::to_string(seed) + ": " + cause),
        n_(n),
        replication_(replication),
        seed_(seed) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t replication() const noexcept { return replication_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::size_t n_;
  std::size_t replication_;
  std::uint64_t seed_;
};

}  // namespace orlicz
