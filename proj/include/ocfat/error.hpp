#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ocfat {

/// Domain error carrying a stable machine-readable code alongside the message.
/// Codes are the ones surfaced by the CLI (e.g. "FixedPointReversal").
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, const std::string& code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace ocfat
