#pragma once

#include <stdexcept>
#include <string>

namespace cperiod {

/// Failure classes surfaced to the command line as distinct exit codes.
enum class ErrorCategory {
  Validation,  // bad input; exit 2
  Numerical,   // divergence, exhausted search budget, refused contraction; exit 3
};

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what, ErrorCategory category)
      : std::runtime_error(what), kind_(std::move(kind)), category_(category) {}

  /// Stable machine-readable name, e.g. "DomainError".
  const std::string& kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_; }

 private:
  std::string kind_;
  ErrorCategory category_;
};

#define CPERIOD_DEFINE_ERROR(Name, Category)                \
  class Name : public Error {                               \
   public:                                                  \
    explicit Name(const std::string& what)                  \
        : Error(#Name, what, ErrorCategory::Category) {}    \
  };

CPERIOD_DEFINE_ERROR(ValidationError, Validation)
CPERIOD_DEFINE_ERROR(InvalidMultiplier, Validation)
CPERIOD_DEFINE_ERROR(DomainError, Validation)
CPERIOD_DEFINE_ERROR(TransferError, Validation)
CPERIOD_DEFINE_ERROR(EmptyMaskError, Validation)
CPERIOD_DEFINE_ERROR(ExtensionError, Validation)
CPERIOD_DEFINE_ERROR(WrongKindError, Validation)
CPERIOD_DEFINE_ERROR(SingularWindowError, Validation)
CPERIOD_DEFINE_ERROR(SearchBudgetError, Numerical)
CPERIOD_DEFINE_ERROR(NonContractionError, Numerical)
CPERIOD_DEFINE_ERROR(DivergenceError, Numerical)
CPERIOD_DEFINE_ERROR(NotConvergedError, Numerical)

#undef CPERIOD_DEFINE_ERROR

}  // namespace cperiod
