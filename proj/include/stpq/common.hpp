#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace stpq {

using ObjectId = std::uint64_t;
using Timestamp = std::int64_t;

// Open lifespan sentinel, rendered '$' in dumps.
inline constexpr Timestamp kOpen = std::numeric_limits<Timestamp>::max();

// Logic bug in the storage layer (unknown page, capacity overflow).
struct StoreError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input data (alternation violations, bad event logs).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unparseable config, query or log file.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stpq
