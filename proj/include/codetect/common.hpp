#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace codetect {

// Maps onto the CLI exit codes: validation 2, stage 3, io 4.
enum class ErrorKind { validation, stage, io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline Error validation_error(const std::string& what) { return {ErrorKind::validation, what}; }
inline Error stage_error(const std::string& what) { return {ErrorKind::stage, what}; }
inline Error io_error(const std::string& what) { return {ErrorKind::io, what}; }

/// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view text);

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::string_view trim_right(std::string_view s);
std::string_view trim(std::string_view s);
bool is_blank(std::string_view s);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace codetect
