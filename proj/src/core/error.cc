#include "bigrady/error.h"

namespace bigrady {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnknownControl: return "UnknownControl";
    case ErrorKind::kArityMismatch: return "ArityMismatch";
    case ErrorKind::kPlaceCycle: return "PlaceCycle";
    case ErrorKind::kAtomicWithChildren: return "AtomicWithChildren";
    case ErrorKind::kInvalidBigraph: return "InvalidBigraph";
    case ErrorKind::kInvalidRule: return "InvalidRule";
    case ErrorKind::kStateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorKind::kUnknownPredicate: return "UnknownPredicate";
    case ErrorKind::kSyntaxError: return "SyntaxError";
    case ErrorKind::kDuplicateControlSort: return "DuplicateControlSort";
    case ErrorKind::kUndeclaredSort: return "UndeclaredSort";
    case ErrorKind::kUnsortedControl: return "UnsortedControl";
    case ErrorKind::kEmptyCriteriaDomain: return "EmptyCriteriaDomain";
    case ErrorKind::kInconsistentSpec: return "InconsistentSpec";
    case ErrorKind::kUnknownImport: return "UnknownImport";
    case ErrorKind::kDuplicateRule: return "DuplicateRule";
    case ErrorKind::kUnknownRule: return "UnknownRule";
    case ErrorKind::kInvalidModel: return "InvalidModel";
    case ErrorKind::kUnknownExample: return "UnknownExample";
  }
  return "Error";
}

namespace {

std::string render(ErrorKind kind, const std::string& message, const SourcePos& pos) {
  std::string out = error_kind_name(kind);
  if (pos.line > 0) {
    out += " at " + std::to_string(pos.line) + ":" + std::to_string(pos.column);
  } else if (pos.offset >= 0) {
    out += " at offset " + std::to_string(pos.offset);
  }
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, SourcePos pos)
    : std::runtime_error(render(kind, message, pos)), kind_(kind), pos_(pos), detail_(message) {}

BudgetExceeded::BudgetExceeded(std::size_t limit, std::size_t states, std::size_t transitions)
    : Error(ErrorKind::kStateBudgetExceeded,
            "state budget of " + std::to_string(limit) + " exceeded after " +
                std::to_string(states) + " states and " + std::to_string(transitions) +
                " transitions"),
      limit_(limit),
      states_(states),
      transitions_(transitions) {}

}  // namespace bigrady
