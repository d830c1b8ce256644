#include "laver/identities.hpp"

#include <random>

namespace laver {
namespace {

constexpr std::uint64_t kChunk = 4096;

// Triples of chunk `index`, drawn from a generator seeded by (seed, index).
std::uint64_t sampled_chunk(const LaverTable& t, std::uint64_t seed, std::uint64_t index, std::uint64_t count) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::uint64_t> pick(0, t.size() - 1);
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto a = static_cast<Element>(pick(rng));
        const auto b = static_cast<Element>(pick(rng));
        const auto c = static_cast<Element>(pick(rng));
        if (t.apply(a, t.apply(b, c)) != t.apply(t.apply(a, b), t.apply(a, c))) ++bad;
    }
    return bad;
}

std::uint64_t ld_row(const LaverTable& t, Element a) {
    std::uint64_t bad = 0;
    for (std::uint64_t b = 0; b < t.size(); ++b) {
        const auto ab = t.apply(a, b);
        for (std::uint64_t c = 0; c < t.size(); ++c) {
            const auto bc = t.apply(static_cast<Element>(b), c);
            if (t.apply(a, bc) != t.apply(ab, t.apply(a, c))) ++bad;
        }
    }
    return bad;
}

std::uint64_t compose_row(const LaverTable& t, Element a) {
    std::uint64_t bad = 0;
    for (std::uint64_t b = 0; b < t.size(); ++b) {
        const auto ab = t.compose(a, static_cast<Element>(b));
        for (std::uint64_t c = 0; c < t.size(); ++c) {
            if (t.apply(ab, c) != t.apply(a, t.apply(static_cast<Element>(b), c))) ++bad;
        }
    }
    return bad;
}

template <class RowFn>
std::uint64_t over_rows(const LaverTable& t, int workers, RowFn row) {
    std::uint64_t bad = 0;
    const auto n = static_cast<std::int64_t>(t.size());
    if (workers == 0) {
        for (std::int64_t a = 0; a < n; ++a) bad += row(t, static_cast<Element>(a));
        return bad;
    }
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1) reduction(+ : bad)
    for (std::int64_t a = 0; a < n; ++a) bad += row(t, static_cast<Element>(a));
    return bad;
}

}  // namespace

std::uint64_t ld_violations_exhaustive(const LaverTable& table, int workers) {
    return over_rows(table, workers, ld_row);
}

std::uint64_t compose_violations_exhaustive(const LaverTable& table, int workers) {
    return over_rows(table, workers, compose_row);
}

std::uint64_t ld_violations_sampled(const LaverTable& table, std::uint64_t triples, std::uint64_t seed, int workers) {
    const std::uint64_t chunks = (triples + kChunk - 1) / kChunk;
    auto chunk_size = [&](std::uint64_t i) { return i + 1 < chunks ? kChunk : triples - i * kChunk; };
    std::uint64_t bad = 0;
    if (workers == 0) {
        for (std::uint64_t i = 0; i < chunks; ++i) bad += sampled_chunk(table, seed, i, chunk_size(i));
        return bad;
    }
    const auto n = static_cast<std::int64_t>(chunks);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1) reduction(+ : bad)
    for (std::int64_t i = 0; i < n; ++i) {
        bad += sampled_chunk(table, seed, static_cast<std::uint64_t>(i), chunk_size(static_cast<std::uint64_t>(i)));
    }
    return bad;
}

}  // namespace laver
