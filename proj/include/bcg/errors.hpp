#pragma once

#include <stdexcept>

namespace bcg {

// File missing/unreadable or malformed content (parse errors carry line numbers).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input was structurally valid but statistically degenerate
// (e.g. "nothing to score", "rmcorr undefined").
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bcg
