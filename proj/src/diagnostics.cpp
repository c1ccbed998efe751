#include "plstar/diagnostics.hpp"

#include <algorithm>

namespace plstar {

const char* diag_code_name(DiagCode code) {
    switch (code) {
        case DiagCode::SyntaxError: return "SyntaxError";
        case DiagCode::UndeclaredIdentifier: return "UndeclaredIdentifier";
        case DiagCode::KindError: return "KindError";
        case DiagCode::SharedProcOutput: return "SharedProcOutput";
        case DiagCode::DataSetMismatch: return "DataSetMismatch";
        case DiagCode::FormalIsOuterOutput: return "FormalIsOuterOutput";
        case DiagCode::SideEffectOnCapturedVar: return "SideEffectOnCapturedVar";
        case DiagCode::FixVarKind: return "FixVarKind";
        case DiagCode::ProcRedefined: return "ProcRedefined";
        case DiagCode::DataUseBeforeDef: return "DataUseBeforeDef";
        case DiagCode::SigMismatch: return "SigMismatch";
        case DiagCode::NotOutputInjective: return "NotOutputInjective";
        case DiagCode::DataIdentified: return "DataIdentified";
        case DiagCode::KindMismatch: return "KindMismatch";
        case DiagCode::PsiViolation: return "PsiViolation";
        case DiagCode::UnknownVariable: return "UnknownVariable";
        case DiagCode::VarAlreadyPresent: return "VarAlreadyPresent";
    }
    return "Unknown";
}

std::string Diagnostic::render(const std::string& path) const {
    std::string out = diag_code_name(code);
    out += " ";
    out += path;
    out += ":" + std::to_string(span.line) + ":" + std::to_string(span.column);
    out += " " + message;
    return out;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         if (a.span.start != b.span.start) return a.span.start < b.span.start;
                         if (a.code != b.code) return static_cast<int>(a.code) < static_cast<int>(b.code);
                         return a.message < b.message;
                     });
}

const char* err_name(Err e) {
    switch (e) {
        case Err::KindMismatch: return "KindMismatch";
        case Err::PsiViolation: return "PsiViolation";
        case Err::UnboundFragment: return "UnboundFragment";
        case Err::VarArityMismatch: return "VarArityMismatch";
        case Err::SyntaxError: return "SyntaxError";
        case Err::UndeclaredIdentifier: return "UndeclaredIdentifier";
        case Err::KindError: return "KindError";
        case Err::UnknownVariable: return "UnknownVariable";
        case Err::VarAlreadyPresent: return "VarAlreadyPresent";
        case Err::PhiPrecondViolated: return "PhiPrecondViolated";
        case Err::DomainTooLarge: return "DomainTooLarge";
        case Err::MissingInput: return "MissingInput";
        case Err::PrecondViolation: return "PrecondViolation";
        case Err::DuplicateBuiltin: return "DuplicateBuiltin";
        case Err::DuplicateBackend: return "DuplicateBackend";
        case Err::UnboundPrimitive: return "UnboundPrimitive";
        case Err::UnsupportedSort: return "UnsupportedSort";
        case Err::UnknownRulePayload: return "UnknownRulePayload";
        case Err::OracleRefused: return "OracleRefused";
        case Err::NotExtractable: return "NotExtractable";
        case Err::ExecutionError: return "ExecutionError";
        case Err::NoLeastSolution: return "NoLeastSolution";
        case Err::BadTerm: return "BadTerm";
        case Err::BadConfig: return "BadConfig";
    }
    return "Error";
}

}  // namespace plstar
