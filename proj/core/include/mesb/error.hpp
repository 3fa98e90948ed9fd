#pragma once

#include <stdexcept>
#include <string>

namespace mesb {

enum class ErrorClass {
    Config,      // bad configuration or command line
    Io,          // missing or unreadable files
    Validation,  // malformed content or a violated domain invariant
    Internal,    // should-not-happen conditions
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string msg)
        : std::runtime_error(std::move(msg)), cls_(cls) {}

    ErrorClass error_class() const { return cls_; }

    static Error config(std::string msg) { return {ErrorClass::Config, std::move(msg)}; }
    static Error io(std::string msg) { return {ErrorClass::Io, std::move(msg)}; }
    static Error validation(std::string msg) { return {ErrorClass::Validation, std::move(msg)}; }
    static Error internal(std::string msg) { return {ErrorClass::Internal, std::move(msg)}; }

private:
    ErrorClass cls_;
};

} // namespace mesb
