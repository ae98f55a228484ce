#pragma once

#include <stdexcept>
#include <string>

namespace affine_moduli {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// |det A| at or below the invertibility cutoff.
struct SingularMap : Error {
  using Error::Error;
};

struct NonFinite : Error {
  using Error::Error;
};

// Constructor parameters violate a stated constraint; the message names it.
struct BadParams : Error {
  using Error::Error;
};

struct ZeroParameter : Error {
  using Error::Error;
};

struct EmptyList : Error {
  using Error::Error;
};

struct DegenerateRicci : Error {
  using Error::Error;
};

// Complex coefficient table supplies a symbol and its conjugate partner
// with incompatible values.
struct ConjugationMismatch : Error {
  using Error::Error;
};

struct NoClosedForm : Error {
  using Error::Error;
};

struct UnknownFamily : Error {
  using Error::Error;
};

// Exponent measurement trials disagree; indicates an implementation bug.
struct InconsistentExponent : Error {
  using Error::Error;
};

struct IntegerOverflow : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace affine_moduli
