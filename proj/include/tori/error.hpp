#pragma once

#include <stdexcept>
#include <string>

namespace tori {

// Every failure carries a short kind tag (e.g. "InfiniteCokernel") so the CLI
// can map it to an exit code and tests can assert on it.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace tori
