#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbsuper {

// Base of every library error. `is_input_error` decides the CLI exit code (2 vs 1).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, bool input_error = true)
      : std::runtime_error(what), input_(input_error) {}
  bool is_input_error() const { return input_; }

 private:
  bool input_;
};

#define RBSUPER_ERROR(Name)                                            \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

RBSUPER_ERROR(DivideByZero);
RBSUPER_ERROR(UnknownSymbol);
RBSUPER_ERROR(NearZeroDenominator);
RBSUPER_ERROR(FieldMismatch);
RBSUPER_ERROR(InputError);
RBSUPER_ERROR(KindMismatch);
RBSUPER_ERROR(MissingInternalProduct);
RBSUPER_ERROR(DimensionMismatch);
RBSUPER_ERROR(WeightMismatch);
RBSUPER_ERROR(NotLieAdmissible);
RBSUPER_ERROR(NotCommuting);
RBSUPER_ERROR(UnpinnedParameters);
RBSUPER_ERROR(ConstraintViolated);
RBSUPER_ERROR(NoMatch);
RBSUPER_ERROR(UnknownId);

#undef RBSUPER_ERROR

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error("SyntaxError at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Thrown by the Groebner engine; carries nothing but the cap that was hit.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what) : Error("CapExceeded: " + what, false) {}
};

// A construction produced an output that fails its own axioms.
class ConstructionFailed : public Error {
 public:
  explicit ConstructionFailed(const std::string& what) : Error("ConstructionFailed: " + what, false) {}
};

}  // namespace rbsuper
