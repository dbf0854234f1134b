#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bigrady {

enum class ErrorKind {
  kUnknownControl,
  kArityMismatch,
  kPlaceCycle,
  kAtomicWithChildren,
  kInvalidBigraph,
  kInvalidRule,
  kStateBudgetExceeded,
  kUnknownPredicate,
  kSyntaxError,
  kDuplicateControlSort,
  kUndeclaredSort,
  kUnsortedControl,
  kEmptyCriteriaDomain,
  kInconsistentSpec,
  kUnknownImport,
  kDuplicateRule,
  kUnknownRule,
  kInvalidModel,
  kUnknownExample,
};

const char* error_kind_name(ErrorKind kind);

// Position is optional; line/column are 1-based, offset is 0-based.
struct SourcePos {
  int line = 0;
  int column = 0;
  std::ptrdiff_t offset = -1;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, SourcePos pos = {});

  ErrorKind kind() const { return kind_; }
  const SourcePos& pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
  std::string detail_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t limit, std::size_t states, std::size_t transitions);

  std::size_t limit() const { return limit_; }
  std::size_t states() const { return states_; }
  std::size_t transitions() const { return transitions_; }

 private:
  std::size_t limit_;
  std::size_t states_;
  std::size_t transitions_;
};

}  // namespace bigrady
