#pragma once

#include <cstdint>

/// Seed for randomized tests; set with --seed, default 0.
std::uint64_t test_seed();
