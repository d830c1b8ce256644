#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace laver {

using Element = std::uint32_t;
using Rank = unsigned;

// Largest rank whose elements fit in 32 bits.
inline constexpr Rank kMaxRank = 32;

struct BuildLimits {
    std::uint64_t max_entries = std::uint64_t{1} << 28;
};

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UndefinedThresholdError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The cyclic left-distributive algebra A_n on {0, ..., 2^n - 1} with
// a * 1 = a + 1 mod 2^n. Only the period-compressed rows are stored:
// row a holds a*1, a*2, ..., a*p(a), the last of which is 0.
//
// Immutable once built; safe to share between threads.
class LaverTable {
public:
    LaverTable() = default;

    Rank rank() const noexcept { return rank_; }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << rank_; }

    // a * b, with b taken modulo the period of a and a * 0 = 0.
    Element apply(Element a, std::uint64_t b) const;

    std::uint64_t period(Element a) const;
    unsigned period_log2(Element a) const;

    // Least c with a * c >= 2^(n-1). Undefined for a = 2^n - 1.
    std::uint64_t threshold(Element a) const;

    // (a * (b+1)) - 1 mod 2^n
    Element compose(Element a, Element b) const;

    std::vector<Element> row(Element a) const;

    // Sum of all periods.
    std::uint64_t total_entries() const noexcept { return total_entries_; }
    // Bytes used per stored value (1, 2 or 4).
    unsigned value_width() const noexcept { return width_; }

    // Checks the row invariants; returns an empty string when they hold,
    // otherwise a description of the first violation.
    std::string validate() const;

    friend bool operator==(const LaverTable& x, const LaverTable& y);

    // Assembles a table from rows given in ascending order of a. The rows
    // are checked against the structural invariants; throws
    // std::invalid_argument when they fail.
    static LaverTable from_rows(Rank n, std::span<const std::vector<Element>> rows);

private:
    friend LaverTable build_table(Rank n, const BuildLimits& limits);

    Element value_at(std::uint64_t index) const noexcept {
        switch (width_) {
            case 1: return bytes_[index];
            case 2: {
                std::uint16_t v;
                std::memcpy(&v, bytes_.data() + 2 * index, 2);
                return v;
            }
            default: {
                std::uint32_t v;
                std::memcpy(&v, bytes_.data() + 4 * index, 4);
                return v;
            }
        }
    }
    void push_value(Element v);
    void check_element(Element a) const;

    Rank rank_ = 0;
    unsigned width_ = 1;
    std::uint64_t total_entries_ = 0;
    std::vector<std::uint64_t> start_;      // per element, offset of its row
    std::vector<std::uint8_t> period_log2_;  // per element
    std::vector<std::uint8_t> bytes_;        // packed row values
};

// Smallest value width in bytes that holds 2^n - 1.
unsigned value_width_for(Rank n) noexcept;

// Builds A_n. Rows are filled for a = 2^n - 1 down to 0 with
// a * b = (a * (b-1)) * (a+1); every lookup lands in an already
// completed higher row. Throws ResourceLimitError when the stored entry
// count would exceed limits.max_entries.
LaverTable build_table(Rank n, const BuildLimits& limits = {});

}  // namespace laver
