#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crosswalk {

// Malformed input file. Message carries "path:line:" when the position is known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, std::size_t line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
          path_(std::move(path)),
          line_(line) {}

    const std::string& path() const { return path_; }
    std::size_t line() const { return line_; }

private:
    std::string path_;
    std::size_t line_ = 0;
};

// Data violates a documented invariant or precondition.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Completion endpoint failed (transport, auth, bad payload).
class ProviderError : public std::runtime_error {
public:
    explicit ProviderError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crosswalk
