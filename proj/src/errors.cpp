#include "topicgraph/errors.hpp"

namespace topicgraph {

namespace {

std::string with_line(const std::string& what, std::size_t line)
{
    if (line == 0) return what;
    return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

FormatError::FormatError(const std::string& what, std::size_t line)
    : Error("format_error", with_line(what, line)), line_(line)
{}

DuplicateIdError::DuplicateIdError(const std::string& id)
    : Error("duplicate_id", "duplicate document id: " + id), id_(id)
{}

}  // namespace topicgraph
