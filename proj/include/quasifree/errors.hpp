#pragma once

#include <stdexcept>
#include <string>

namespace quasifree {

enum class ErrorKind {
    argument,      // malformed input, arity mismatch, index out of range
    feature,       // descriptor combination the engine does not support
    precondition,  // a mathematical hypothesis of the requested construction fails
    construction,  // a construction step could not find its witness
    resource,      // a configured cap was exceeded
    precision,     // interval enclosures too coarse to decide a real comparison
    internal,      // a self-check failed; indicates a bug, not bad input
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::argument: return "argument";
    case ErrorKind::feature: return "feature";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::construction: return "construction";
    case ErrorKind::resource: return "resource";
    case ErrorKind::precision: return "precision";
    case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

/// Every error carries the module that raised it and the query that failed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, std::string query, const std::string& message)
        : std::runtime_error(module + ": " + message + (query.empty() ? "" : " [" + query + "]")),
          kind_(kind), module_(std::move(module)), query_(std::move(query)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }
    const std::string& query() const noexcept { return query_; }

    /// Process exit code used by the command-line frontend.
    int exit_code() const noexcept {
        switch (kind_) {
        case ErrorKind::resource: return 3;
        case ErrorKind::precision: return 4;
        case ErrorKind::internal: return 1;
        default: return 2;
        }
    }

private:
    ErrorKind kind_;
    std::string module_;
    std::string query_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& module, const std::string& message,
                              const std::string& query = {}) {
    throw Error(kind, module, query, message);
}

} // namespace quasifree
