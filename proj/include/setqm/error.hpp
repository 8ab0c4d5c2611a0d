#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace setqm {

// Violated precondition of a library operation (mismatched universes,
// singular matrices, empty states, ...). The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed textual input. `position` is the 0-based offset into the text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::string text, std::size_t position);

    const std::string& text() const { return text_; }
    std::size_t position() const { return position_; }

    // Message followed by the offending text and a caret under `position`.
    std::string annotated() const;

private:
    std::string text_;
    std::size_t position_;
};

}  // namespace setqm
