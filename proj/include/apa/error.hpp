#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace apa {

enum class ErrorKind {
    UndeclaredArgument,
    DuplicateArgument,
    BadInitial,
    ReservedName,
    SyntaxError,
    UnknownName,
    DuplicateName,
    UnknownSelector,
    EmptyGamma,
    TooLarge,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UndeclaredArgument: return "UndeclaredArgument";
        case ErrorKind::DuplicateArgument: return "DuplicateArgument";
        case ErrorKind::BadInitial: return "BadInitial";
        case ErrorKind::ReservedName: return "ReservedName";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownName: return "UnknownName";
        case ErrorKind::DuplicateName: return "DuplicateName";
        case ErrorKind::UnknownSelector: return "UnknownSelector";
        case ErrorKind::EmptyGamma: return "EmptyGamma";
        case ErrorKind::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

/// 1-based line/column; line 0 means "no source position".
struct SourceLocation {
    std::size_t line = 0;
    std::size_t column = 0;

    friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

struct Diagnostic {
    ErrorKind kind;
    std::string token;
    SourceLocation location;
    std::string message;

    std::string str() const {
        std::string out;
        if (location.line != 0)
            out += std::to_string(location.line) + ":" + std::to_string(location.column) + ": ";
        out += std::string(to_string(kind));
        if (!token.empty()) out += "(" + token + ")";
        if (!message.empty()) out += ": " + message;
        return out;
    }
};

/// Every failure in the library surfaces as an apa::Error carrying one or
/// more diagnostics. kind() is the kind of the first diagnostic.
class Error : public std::runtime_error {
public:
    explicit Error(std::vector<Diagnostic> diagnostics)
        : std::runtime_error(render(diagnostics)), diagnostics_(std::move(diagnostics)) {}

    Error(ErrorKind kind, std::string token, std::string message = {}, SourceLocation loc = {})
        : Error(std::vector<Diagnostic>{Diagnostic{kind, std::move(token), loc, std::move(message)}}) {}

    ErrorKind kind() const { return diagnostics_.front().kind; }
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    static std::string render(const std::vector<Diagnostic>& diagnostics) {
        std::string out;
        for (const auto& d : diagnostics) {
            if (!out.empty()) out += '\n';
            out += d.str();
        }
        return out;
    }

    std::vector<Diagnostic> diagnostics_;
};

}  // namespace apa
