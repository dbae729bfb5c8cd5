#pragma once
#include <string>

#include "modp/error.hpp"

// error-code probe: returns the code of the modp::Error thrown by fn, or ""
template <class Fn>
std::string thrown_code(Fn &&fn)
{
    try {
        fn();
    } catch (const modp::Error &e) {
        return e.code;
    } catch (...) {
        return "<other exception>";
    }
    return "<no throw>";
}
