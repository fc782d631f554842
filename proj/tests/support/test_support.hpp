#pragma once

#include <cstdint>

namespace probe::testing {

/// Declare that the calling test builds n distributions that fail the
/// normalization check on purpose.
void expect_violations(std::uint64_t n);

} // namespace probe::testing
