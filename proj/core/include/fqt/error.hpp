#pragma once

#include <stdexcept>
#include <string>

namespace fqt {

// Thrown when a caller violates a documented precondition.
class domain_error : public std::invalid_argument {
   public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an internal invariant fails. Seeing this is a bug, not bad input.
class internal_error : public std::logic_error {
   public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Thrown by text parsers; carries a 0-based column of the offending token.
class parse_error : public std::invalid_argument {
   public:
    parse_error(const std::string& what, size_t column)
        : std::invalid_argument(what + " (column " + std::to_string(column) + ")"), column_(column) {}
    size_t column() const noexcept { return column_; }

   private:
    size_t column_;
};

}  // namespace fqt

#define FQT_REQUIRE(cond, msg)                    \
    do {                                          \
        if (!(cond)) throw fqt::domain_error(msg); \
    } while (0)

#define FQT_CHECK(cond, msg)                        \
    do {                                            \
        if (!(cond)) throw fqt::internal_error(msg); \
    } while (0)
