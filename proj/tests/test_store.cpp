#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <zlib.h>

#include <fstream>
#include <iterator>

#include "laver/identities.hpp"
#include "laver/store.hpp"

using namespace laver;
namespace fs = std::filesystem;

namespace {
struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("laver-store-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::uint8_t> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

// Rewrites the trailing checksum after the body was edited on purpose.
void reseal(std::vector<std::uint8_t>& bytes) {
    const auto body = bytes.size() - 4;
    const auto crc = ::crc32(0L, bytes.data(), static_cast<uInt>(body));
    for (int i = 0; i < 4; ++i) bytes[body + i] = static_cast<std::uint8_t>(crc >> (8 * i));
}
}  // namespace

TEST_CASE("A_1 encodes to 30 bytes") {
    const auto bytes = store::encode(build_table(1));
    REQUIRE(bytes.size() == 30);
    CHECK(bytes[0] == 'L');
    CHECK(bytes[3] == 'R');
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 1);
    // a = 0: period 2, values 1, 0
    CHECK(bytes[6] == 2);
    CHECK(bytes[10] == 1);
    CHECK(bytes[14] == 0);
    // a = 1: period 1, value 0
    CHECK(bytes[18] == 1);
    CHECK(bytes[22] == 0);
}

TEST_CASE("byte length formula") {
    for (Rank n = 0; n <= 10; ++n) {
        const auto t = build_table(n);
        std::uint64_t expect = 6 + 4;
        for (std::uint64_t a = 0; a < t.size(); ++a) expect += 4 * (1 + t.period(static_cast<Element>(a)));
        CHECK(store::encode(t).size() == expect);
    }
}

TEST_CASE("round trip through files") {
    TempDir dir;
    for (Rank n = 0; n <= 12; ++n) {
        const auto t = build_table(n);
        const auto path = store::save(t, dir.path);
        CHECK(path == store::cache_path(dir.path, n));
        CHECK(path.filename() == "A" + std::to_string(n) + ".lavr");
        const auto back = store::load(dir.path, n);
        CHECK(back == t);
        CHECK(store::decode(store::encode(back)) == t);
    }
    // no temporaries left behind
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path)) ++files;
    CHECK(files == 13);
}

TEST_CASE("a loaded table passes the LD spot check like a fresh one") {
    TempDir dir;
    const auto fresh = build_table(12);
    store::save(fresh, dir.path);
    const auto loaded = store::load(dir.path, 12);
    CHECK(ld_violations_sampled(loaded, 1'000'000, 42, 4) == 0);
    CHECK(ld_violations_sampled(loaded, 1'000'000, 42, 4) == ld_violations_sampled(fresh, 1'000'000, 42, 4));
}

TEST_CASE("corrupted files are rejected") {
    TempDir dir;
    const auto path = store::save(build_table(6), dir.path);
    const auto good = slurp(path);

    SUBCASE("truncated") {
        auto bytes = good;
        bytes.resize(bytes.size() - 7);
        spit(path, bytes);
        CHECK_THROWS_AS(store::load(dir.path, 6), store::CorruptCacheError);
    }
    SUBCASE("flipped bit") {
        auto bytes = good;
        bytes[40] ^= 0x10;
        spit(path, bytes);
        CHECK_THROWS_AS(store::load(dir.path, 6), store::CorruptCacheError);
    }
    SUBCASE("bad magic") {
        auto bytes = good;
        bytes[0] = 'X';
        reseal(bytes);
        spit(path, bytes);
        CHECK_THROWS_AS(store::load(dir.path, 6), store::CacheFormatError);
    }
    SUBCASE("version mismatch") {
        auto bytes = good;
        bytes[4] = 2;
        reseal(bytes);
        spit(path, bytes);
        CHECK_THROWS_AS(store::load(dir.path, 6), store::CacheFormatError);
    }
    SUBCASE("wrong rank in header") {
        auto bytes = good;
        bytes[5] = 5;
        reseal(bytes);
        spit(path, bytes);
        CHECK_THROWS_AS(store::load(dir.path, 6), store::CacheError);
    }
    SUBCASE("checksum intact but not a Laver table") {
        auto bytes = good;
        // first value of row 0 should be 1
        bytes[10] = 7;
        reseal(bytes);
        spit(path, bytes);
        CHECK_THROWS_AS(store::load(dir.path, 6), store::CorruptCacheError);
    }
    SUBCASE("empty file") {
        spit(path, {});
        CHECK_THROWS_AS(store::load(dir.path, 6), store::CorruptCacheError);
    }
}

TEST_CASE("missing file") {
    TempDir dir;
    CHECK_THROWS_AS(store::load(dir.path, 3), store::MissingCacheError);
}

TEST_CASE("unwritable destination") {
    TempDir dir;
    fs::create_directories(dir.path);
    const auto blocker = dir.path / "file";
    spit(blocker, {1, 2, 3});
    CHECK_THROWS_AS(store::save(build_table(3), blocker / "sub"), store::CacheError);
}

TEST_CASE("load_or_build") {
    TempDir dir;
    store::CacheOptions opts;
    opts.dir = dir.path;
    const auto t = store::load_or_build(7, opts);
    CHECK(fs::exists(store::cache_path(dir.path, 7)));
    CHECK(store::load_or_build(7, opts) == t);

    spit(store::cache_path(dir.path, 7), {'L', 'A', 'V', 'R'});
    CHECK(store::load_or_build(7, opts) == t);
    CHECK(store::load(dir.path, 7) == t);

    spit(store::cache_path(dir.path, 7), {'L', 'A', 'V', 'R'});
    opts.on_corrupt = store::OnCorrupt::fail;
    CHECK_THROWS_AS(store::load_or_build(7, opts), store::CorruptCacheError);

    store::CacheOptions off;
    off.dir = dir.path / "unused";
    off.enabled = false;
    CHECK(store::load_or_build(5, off) == build_table(5));
    CHECK_FALSE(fs::exists(off.dir));
}

TEST_CASE("load_tower") {
    TempDir dir;
    store::CacheOptions opts;
    opts.dir = dir.path;
    const auto tower = store::load_tower(8, opts);
    CHECK(tower.max_rank() == 8);
    for (Rank n = 0; n <= 8; ++n) CHECK(tower.at(n) == build_table(n));
}
