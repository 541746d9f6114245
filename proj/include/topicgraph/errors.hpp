#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topicgraph {

/// Base class for all recoverable errors raised by the library.
/// `code()` is the stable machine-readable identifier used in API error bodies.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io_error", what) {}
};

/// Malformed input. `line()` is 1-based, 0 when not tied to a line.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what, std::size_t line = 0);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateIdError : public Error {
public:
    explicit DuplicateIdError(const std::string& id);
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class EmptyCorpusError : public Error {
public:
    explicit EmptyCorpusError(const std::string& what) : Error("empty_corpus", what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config_error", what) {}
};

class UnknownTermError : public Error {
public:
    explicit UnknownTermError(const std::string& term)
        : Error("unknown_term", "unknown term: " + term) {}
};

class UnknownTopicError : public Error {
public:
    explicit UnknownTopicError(const std::string& topic)
        : Error("unknown_topic", "unknown topic: " + topic) {}
};

class UnknownDocumentError : public Error {
public:
    explicit UnknownDocumentError(const std::string& id)
        : Error("unknown_document", "unknown document: " + id) {}
};

class EmptySelectionError : public Error {
public:
    EmptySelectionError() : Error("empty_selection", "selection contains no nodes") {}
};

/// Well-formed selection with unusable parameters (e.g. limit 0).
class InvalidQueryError : public Error {
public:
    explicit InvalidQueryError(const std::string& what) : Error("invalid_query", what) {}
};

}  // namespace topicgraph
