#include "laver/store.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <system_error>
#include <unistd.h>

namespace laver::store {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t pos) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes[pos + i]} << (8 * i);
    return v;
}

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - pos, 1u << 30));
        crc = crc32(crc, bytes.data() + pos, chunk);
        pos += chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::filesystem::path cache_path(const std::filesystem::path& dir, Rank n) {
    return dir / ("A" + std::to_string(n) + ".lavr");
}

std::vector<std::uint8_t> encode(const LaverTable& table) {
    if (table.rank() > 31) throw CacheFormatError("the cache format stores periods as u32 and stops at n = 31");
    std::vector<std::uint8_t> out;
    out.reserve(6 + 4 * (table.size() + table.total_entries()) + 4);
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    out.push_back(kFormatVersion);
    out.push_back(static_cast<std::uint8_t>(table.rank()));
    for (std::uint64_t a = 0; a < table.size(); ++a) {
        const auto e = static_cast<Element>(a);
        const std::uint64_t p = table.period(e);
        put_u32(out, static_cast<std::uint32_t>(p));
        for (std::uint64_t b = 1; b <= p; ++b) put_u32(out, table.apply(e, b));
    }
    put_u32(out, crc32_of(out));
    return out;
}

LaverTable decode(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 10) throw CorruptCacheError("cache file is truncated (" + std::to_string(bytes.size()) + " bytes)");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw CacheFormatError("cache file does not start with LAVR");
    const auto body = bytes.first(bytes.size() - 4);
    if (crc32_of(body) != get_u32(bytes, bytes.size() - 4)) throw CorruptCacheError("cache file CRC-32 mismatch");
    if (bytes[4] != kFormatVersion) {
        throw CacheFormatError("unsupported cache format version " + std::to_string(bytes[4]));
    }
    const Rank n = bytes[5];
    if (n > 31) throw CacheFormatError("cache rank " + std::to_string(n) + " is beyond the u32 format");
    const std::uint64_t n_elems = std::uint64_t{1} << n;

    std::vector<std::vector<Element>> rows(n_elems);
    std::size_t pos = 6;
    for (std::uint64_t a = 0; a < n_elems; ++a) {
        if (pos + 4 > body.size()) throw CorruptCacheError("cache file ends inside row " + std::to_string(a));
        const std::uint32_t p = get_u32(body, pos);
        pos += 4;
        if (p == 0 || !std::has_single_bit(p) || p > n_elems) {
            throw CorruptCacheError("row " + std::to_string(a) + " has invalid period " + std::to_string(p));
        }
        if (pos + 4ull * p > body.size()) throw CorruptCacheError("cache file ends inside row " + std::to_string(a));
        rows[a].reserve(p);
        for (std::uint32_t i = 0; i < p; ++i, pos += 4) rows[a].push_back(get_u32(body, pos));
    }
    if (pos != body.size()) throw CorruptCacheError("cache file has trailing bytes");
    try {
        return LaverTable::from_rows(n, rows);
    } catch (const std::invalid_argument& e) {
        throw CorruptCacheError(std::string("cache file fails the table invariants: ") + e.what());
    }
}

std::filesystem::path save(const LaverTable& table, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw CacheError("cannot create cache directory " + dir.string() + ": " + ec.message());

    const auto bytes = encode(table);
    const auto target = cache_path(dir, table.rank());
    auto temp = target;
    temp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot open " + temp.string() + " for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::filesystem::remove(temp, ec);
            throw CacheError("failed writing " + temp.string());
        }
    }
    std::filesystem::rename(temp, target, ec);
    if (ec) {
        std::filesystem::remove(temp, ec);
        throw CacheError("cannot move " + temp.string() + " to " + target.string() + ": " + ec.message());
    }
    return target;
}

LaverTable load(const std::filesystem::path& dir, Rank n) {
    const auto path = cache_path(dir, n);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingCacheError("no cache file at " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    LaverTable table;
    try {
        table = decode(bytes);
    } catch (const CorruptCacheError& e) {
        throw CorruptCacheError(path.string() + ": " + e.what());
    } catch (const CacheFormatError& e) {
        throw CacheFormatError(path.string() + ": " + e.what());
    }
    if (table.rank() != n) {
        throw CacheFormatError(path.string() + ": holds A_" + std::to_string(table.rank()) + ", expected A_" +
                               std::to_string(n));
    }
    return table;
}

LaverTable load_or_build(Rank n, const CacheOptions& options) {
    if (!options.enabled) return build_table(n, options.limits);
    try {
        return load(options.dir, n);
    } catch (const MissingCacheError&) {
        // fall through to a fresh build
    } catch (const CacheError&) {
        if (options.on_corrupt == OnCorrupt::fail) throw;
    }
    LaverTable table = build_table(n, options.limits);
    try {
        save(table, options.dir);
    } catch (const CacheError&) {
        // An unwritable cache only costs a rebuild next time.
    }
    return table;
}

TableTower load_tower(Rank max_rank, const CacheOptions& options) {
    std::vector<std::shared_ptr<const LaverTable>> tables;
    tables.reserve(max_rank + 1);
    for (Rank m = 0; m <= max_rank; ++m) {
        tables.push_back(std::make_shared<const LaverTable>(load_or_build(m, options)));
    }
    return TableTower(std::move(tables));
}

}  // namespace laver::store
