#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace modp {

// every failed precondition or internal audit throws one of these; the code
// string is the stable identifier tests match on
struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string &msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string &code, const std::string &msg)
{
    throw Error(code, msg);
}

inline void require(bool ok, const std::string &code, const std::string &msg)
{
    if (!ok) fail(code, msg);
}

}
