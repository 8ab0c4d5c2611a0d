#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "setqm/error.hpp"

namespace setqm::detail {

// Whitespace-insensitive cursor over brace-and-comma text forms.
class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool at_end() {
        skip_space();
        return pos_ == text_.size();
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    static bool label_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    std::string label() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && label_char(text_[pos_])) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a label");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    // Raw text up to (not including) the first of `stops` at brace depth 0.
    std::string_view until(std::string_view stops) {
        skip_space();
        const std::size_t start = pos_;
        int depth = 0;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (depth == 0 && stops.find(c) != std::string_view::npos) {
                break;
            }
            if (c == '{' || c == '(') {
                ++depth;
            } else if (c == '}' || c == ')') {
                --depth;
            }
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    void expect_end() {
        if (!at_end()) {
            fail("unexpected trailing input");
        }
    }

    std::size_t position() const { return pos_; }

    [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

    [[noreturn]] void fail_at(const std::string& message, std::size_t pos) const {
        throw ParseError(message, std::string(text_), pos);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace setqm::detail
