#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace graphcorpus {

/// Coarse error classes. The CLI maps them to exit codes 1, 2 and 3.
enum class ErrorKind { validation, runtime, transport };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

/// A malformed input record. Carries the offending file and 1-based line.
class ParseError : public ValidationError {
public:
    ParseError(const std::filesystem::path& file, std::size_t line, const std::string& message)
        : ValidationError(file.string() + ":" + std::to_string(line) + ": " + message),
          file_(file), line_(line) {}

    const std::filesystem::path& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::filesystem::path file_;
    std::size_t line_;
};

class UnknownNodeError : public ValidationError {
public:
    explicit UnknownNodeError(std::string id)
        : ValidationError("unknown node id '" + id + "'"), id_(std::move(id)) {}
    const std::string& node_id() const noexcept { return id_; }

private:
    std::string id_;
};

class MissingAttributeError : public ValidationError {
public:
    MissingAttributeError(std::string node, std::string field)
        : ValidationError("node '" + node + "' has no attribute '" + field + "'"),
          node_(std::move(node)), field_(std::move(field)) {}
    const std::string& node_id() const noexcept { return node_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string node_;
    std::string field_;
};

/// The token limit does not even cover the description boilerplate.
class BudgetTooSmallError : public Error {
public:
    BudgetTooSmallError(std::string node, std::size_t limit, std::size_t boilerplate)
        : Error(ErrorKind::runtime,
                "budget too small for node '" + node + "': limit " + std::to_string(limit) +
                    " < boilerplate cost " + std::to_string(boilerplate)),
          node_(std::move(node)), limit_(limit), boilerplate_(boilerplate) {}
    const std::string& node_id() const noexcept { return node_; }
    std::size_t limit() const noexcept { return limit_; }
    std::size_t boilerplate() const noexcept { return boilerplate_; }

private:
    std::string node_;
    std::size_t limit_;
    std::size_t boilerplate_;
};

class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& what) : Error(ErrorKind::runtime, what) {}
};

class TransportError : public Error {
public:
    explicit TransportError(const std::string& what) : Error(ErrorKind::transport, what) {}
};

inline int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::validation: return 1;
    case ErrorKind::runtime: return 2;
    case ErrorKind::transport: return 3;
    }
    return 2;
}

} // namespace graphcorpus
