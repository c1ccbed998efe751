#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace plstar {

// Byte range plus line/column of the first byte, 1-based. Hand-built terms
// carry the zero span.
struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    int line = 0;
    int column = 0;

    bool known() const { return line > 0; }
    bool operator==(const SourceSpan&) const = default;
};

enum class DiagCode {
    // parser
    SyntaxError,
    UndeclaredIdentifier,
    KindError,
    // check_preconditions
    SharedProcOutput,
    DataSetMismatch,
    FormalIsOuterOutput,
    SideEffectOnCapturedVar,
    FixVarKind,
    ProcRedefined,
    DataUseBeforeDef,
    SigMismatch,
    // check_subst
    NotOutputInjective,
    DataIdentified,
    KindMismatch,
    PsiViolation,
    // analysis misc
    UnknownVariable,
    VarAlreadyPresent,
};

const char* diag_code_name(DiagCode code);

struct Diagnostic {
    DiagCode code;
    std::string message;
    SourceSpan span;
    std::vector<std::string> related_vars;

    std::string render(const std::string& path) const;
};

// Stable order: source position first, then code, then message.
void sort_diagnostics(std::vector<Diagnostic>& diags);

// Hard errors: construction violations, bad inputs to pure operations.
enum class Err {
    KindMismatch,
    PsiViolation,
    UnboundFragment,
    VarArityMismatch,
    SyntaxError,
    UndeclaredIdentifier,
    KindError,
    UnknownVariable,
    VarAlreadyPresent,
    PhiPrecondViolated,
    DomainTooLarge,
    MissingInput,
    PrecondViolation,
    DuplicateBuiltin,
    DuplicateBackend,
    UnboundPrimitive,
    UnsupportedSort,
    UnknownRulePayload,
    OracleRefused,
    NotExtractable,
    ExecutionError,
    NoLeastSolution,
    BadTerm,
    BadConfig,
};

const char* err_name(Err e);

class PlError : public std::runtime_error {
public:
    PlError(Err code, std::string message, SourceSpan span = {})
        : std::runtime_error(std::string(err_name(code)) + ": " + message),
          code_(code),
          span_(span) {}

    Err code() const { return code_; }
    const SourceSpan& span() const { return span_; }

private:
    Err code_;
    SourceSpan span_;
};

}  // namespace plstar
