// errors.hpp — exception types shared across the library, with stable codes
// for the CLI's machine-readable error records.

#pragma once

#include <stdexcept>
#include <string>

namespace braggsim {

// exit codes: 0 success, 2 validation, 3 numerical, 4 I/O
enum class ErrorCode : int { validation = 2, numerical = 3, io = 4 };

struct Error : std::runtime_error {
    Error(ErrorCode c, std::string tag, const std::string& what)
        : std::runtime_error(what), code(c), tag(std::move(tag)) {}
    ErrorCode code;
    std::string tag;  // stable identifier, e.g. "SingularSystem"
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what)
        : Error(ErrorCode::validation, "ValidationError", what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what)
        : Error(ErrorCode::validation, "ParseError", what) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& what)
        : Error(ErrorCode::numerical, "ConvergenceFailure", what) {}
};

struct DefectiveMatrix : Error {
    explicit DefectiveMatrix(const std::string& what)
        : Error(ErrorCode::numerical, "DefectiveMatrix", what) {}
};

struct ExceptionalPoint : Error {
    explicit ExceptionalPoint(const std::string& what)
        : Error(ErrorCode::numerical, "ExceptionalPoint", what) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& what)
        : Error(ErrorCode::numerical, "SingularSystem", what) {}
};

// eigenmode-based scattering requested on an eigensystem flagged as
// exceptional-point adjacent
struct EPUnreliable : Error {
    explicit EPUnreliable(const std::string& what)
        : Error(ErrorCode::numerical, "EPUnreliable", what) {}
};

struct NoRealExtrema : Error {
    explicit NoRealExtrema(const std::string& what)
        : Error(ErrorCode::numerical, "NoRealExtrema", what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what)
        : Error(ErrorCode::io, "IoError", what) {}
};

}  // namespace braggsim
