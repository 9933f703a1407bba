#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace textlevel {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised while loading an external resource file. `line` is 1-based, 0 when
// the error concerns the whole file.
class ResourceError : public Error {
public:
    ResourceError(std::string file, std::size_t line, const std::string& what)
        : Error(line ? file + ":" + std::to_string(line) + ": " + what : file + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

// Malformed bracketed tree input; `offset` is a byte offset into the source.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class AlignmentError : public Error {
public:
    AlignmentError(std::size_t sentence, const std::string& what)
        : Error("sentence " + std::to_string(sentence) + ": " + what), sentence_(sentence) {}
    std::size_t sentence_index() const noexcept { return sentence_; }

private:
    std::size_t sentence_;
};

}  // namespace textlevel
