#pragma once

#include <stdexcept>
#include <string>

namespace amt {

enum class Errc {
    invalid_plan,      // unusable batch layout (empty, zero sizes, overflow)
    range,             // position, index or batch id outside the plan
    shape_mismatch,    // leaf payload does not match the planned batch size
    incomplete_commit, // a planned batch has no result
    duplicate_batch,   // two results claim the same batch id
    plan_mismatch,     // result was built against a different plan
    corrupt_result,    // checkpoint set inconsistent with the plan geometry
    invalid_input,     // empty leaf list or similar caller error
    parse,             // malformed file or flag value
    io,                // filesystem failure
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace amt
