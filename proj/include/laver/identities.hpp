#pragma once

#include <cstdint>

#include "laver/table.hpp"

namespace laver {

// Counts triples (a, b, c) with a*(b*c) != (a*b)*(a*c) over all of A_n.
// workers == 0 runs the serial reference loop.
std::uint64_t ld_violations_exhaustive(const LaverTable& table, int workers = 1);

// Same over `triples` pseudo-random triples. The triples depend only on
// seed, so every worker count sees the same sample.
std::uint64_t ld_violations_sampled(const LaverTable& table, std::uint64_t triples, std::uint64_t seed,
                                    int workers = 1);

// Counts (a, b, c) with (a o b) * c != a * (b * c), all of A_n.
std::uint64_t compose_violations_exhaustive(const LaverTable& table, int workers = 1);

}  // namespace laver
