#pragma once

#include <stdexcept>
#include <string>

namespace bethelab {

/// Base class for all bethelab errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two spectral parameters coincide where a rational kernel has a pole.
class PoleCollision : public Error {
 public:
  using Error::Error;
};

/// q is zero, or +-1 on the exact backend (excluded deformation values).
class InvalidQ : public Error {
 public:
  using Error::Error;
};

class CardinalityMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroParameter : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Combinatorial size guard tripped (permutation-sum oracle is factorial-cost).
class SizeGuardExceeded : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DegenerateJacobian : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bethelab
