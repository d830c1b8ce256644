#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "laver/table.hpp"
#include "laver/tower.hpp"

namespace laver::store {

// A<n>.lavr layout, all integers little-endian:
//   "LAVR" | version (1 byte) | n (1 byte)
//   for a = 0 .. 2^n - 1: period (u32), then period values (u32 each)
//   CRC-32 of everything above (u32)
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr char kMagic[4] = {'L', 'A', 'V', 'R'};

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class MissingCacheError : public CacheError {
public:
    using CacheError::CacheError;
};
class CorruptCacheError : public CacheError {
public:
    using CacheError::CacheError;
};
class CacheFormatError : public CacheError {
public:
    using CacheError::CacheError;
};

std::filesystem::path cache_path(const std::filesystem::path& dir, Rank n);

std::vector<std::uint8_t> encode(const LaverTable& table);
LaverTable decode(std::span<const std::uint8_t> bytes);

// Writes dir/A<n>.lavr through a temporary file and a rename. Creates dir
// if needed.
std::filesystem::path save(const LaverTable& table, const std::filesystem::path& dir);

LaverTable load(const std::filesystem::path& dir, Rank n);

enum class OnCorrupt { rebuild, fail };

struct CacheOptions {
    std::filesystem::path dir = "laver-cache";
    bool enabled = true;
    OnCorrupt on_corrupt = OnCorrupt::rebuild;
    BuildLimits limits;
};

// Loads A_n from the cache, or builds it and writes it back.
LaverTable load_or_build(Rank n, const CacheOptions& options);

TableTower load_tower(Rank max_rank, const CacheOptions& options);

}  // namespace laver::store
