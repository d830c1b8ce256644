#include "laver/table.hpp"

#include <bit>
#include <sstream>

namespace laver {

unsigned value_width_for(Rank n) noexcept {
    if (n <= 8) return 1;
    if (n <= 16) return 2;
    return 4;
}

void LaverTable::push_value(Element v) {
    const auto pos = bytes_.size();
    bytes_.resize(pos + width_);
    switch (width_) {
        case 1: bytes_[pos] = static_cast<std::uint8_t>(v); break;
        case 2: {
            const auto w = static_cast<std::uint16_t>(v);
            std::memcpy(bytes_.data() + pos, &w, 2);
            break;
        }
        default: std::memcpy(bytes_.data() + pos, &v, 4); break;
    }
}

void LaverTable::check_element(Element a) const {
    if (a >= size()) {
        std::ostringstream msg;
        msg << "element " << a << " is outside A_" << rank_ << " (size " << size() << ")";
        throw std::out_of_range(msg.str());
    }
}

Element LaverTable::apply(Element a, std::uint64_t b) const {
    check_element(a);
    if (b == 0) return 0;
    const std::uint64_t mask = (std::uint64_t{1} << period_log2_[a]) - 1;
    return value_at(start_[a] + ((b - 1) & mask));
}

std::uint64_t LaverTable::period(Element a) const {
    check_element(a);
    return std::uint64_t{1} << period_log2_[a];
}

unsigned LaverTable::period_log2(Element a) const {
    check_element(a);
    return period_log2_[a];
}

std::uint64_t LaverTable::threshold(Element a) const {
    check_element(a);
    if (a == size() - 1) {
        std::ostringstream msg;
        msg << "threshold is undefined for the top element " << a << " of A_" << rank_;
        throw UndefinedThresholdError(msg.str());
    }
    // The row increases strictly until its final 0, so binary search on the
    // first p-1 entries; the entry at p-1 is reached only when a*(p-1) is
    // the first value >= 2^(n-1).
    const Element half = static_cast<Element>(size() >> 1);
    const std::uint64_t p = period(a);
    std::uint64_t lo = 0, hi = p - 1;  // search over indices [0, p-1)
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (value_at(start_[a] + mid) >= half) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo + 1;
}

Element LaverTable::compose(Element a, Element b) const {
    check_element(b);
    const Element v = apply(a, std::uint64_t{b} + 1);
    return static_cast<Element>((std::uint64_t{v} + size() - 1) & (size() - 1));
}

std::vector<Element> LaverTable::row(Element a) const {
    const std::uint64_t p = period(a);
    std::vector<Element> out;
    out.reserve(p);
    for (std::uint64_t i = 0; i < p; ++i) out.push_back(value_at(start_[a] + i));
    return out;
}

std::string LaverTable::validate() const {
    const std::uint64_t n_elems = size();
    if (start_.size() != n_elems || period_log2_.size() != n_elems) return "per-element arrays have the wrong length";
    if (period_log2_[0] != rank_) return "period of 0 is not 2^n";
    if (period_log2_[n_elems - 1] != 0) return "period of 2^n - 1 is not 1";
    for (std::uint64_t a = 0; a < n_elems; ++a) {
        const auto e = static_cast<Element>(a);
        const std::uint64_t p = period(e);
        if (value_at(start_[a] + p - 1) != 0) {
            std::ostringstream msg;
            msg << "row " << a << " does not end in 0";
            return msg.str();
        }
        if (value_at(start_[a]) != ((a + 1) & (n_elems - 1))) {
            std::ostringstream msg;
            msg << "row " << a << " violates a*1 = a+1";
            return msg.str();
        }
        Element prev = e;
        for (std::uint64_t i = 0; i + 1 < p; ++i) {
            const Element v = value_at(start_[a] + i);
            if (v <= prev) {
                std::ostringstream msg;
                msg << "row " << a << " is not strictly increasing at column " << (i + 1);
                return msg.str();
            }
            prev = v;
        }
    }
    return {};
}

bool operator==(const LaverTable& x, const LaverTable& y) {
    if (x.rank_ != y.rank_ || x.period_log2_ != y.period_log2_) return false;
    for (std::uint64_t a = 0; a < x.size(); ++a) {
        const std::uint64_t p = std::uint64_t{1} << x.period_log2_[a];
        for (std::uint64_t i = 0; i < p; ++i) {
            if (x.value_at(x.start_[a] + i) != y.value_at(y.start_[a] + i)) return false;
        }
    }
    return true;
}

LaverTable LaverTable::from_rows(Rank n, std::span<const std::vector<Element>> rows) {
    if (n > kMaxRank) throw std::invalid_argument("rank exceeds 32");
    const std::uint64_t n_elems = std::uint64_t{1} << n;
    if (rows.size() != n_elems) throw std::invalid_argument("row count does not match 2^n");
    LaverTable t;
    t.rank_ = n;
    t.width_ = value_width_for(n);
    t.start_.resize(n_elems);
    t.period_log2_.resize(n_elems);
    for (std::uint64_t a = 0; a < n_elems; ++a) {
        const auto& r = rows[a];
        if (r.empty() || !std::has_single_bit(r.size()) || r.size() > n_elems) {
            std::ostringstream msg;
            msg << "row " << a << " has length " << r.size() << ", not a power of two <= 2^n";
            throw std::invalid_argument(msg.str());
        }
        t.start_[a] = t.total_entries_;
        t.period_log2_[a] = static_cast<std::uint8_t>(std::countr_zero(r.size()));
        for (Element v : r) {
            if (v >= n_elems) throw std::invalid_argument("row value outside A_n");
            t.push_value(v);
        }
        t.total_entries_ += r.size();
    }
    if (auto err = t.validate(); !err.empty()) throw std::invalid_argument(err);
    return t;
}

LaverTable build_table(Rank n, const BuildLimits& limits) {
    if (n > kMaxRank) {
        throw ResourceLimitError("rank " + std::to_string(n) + " exceeds the 32-bit element width");
    }
    const std::uint64_t n_elems = std::uint64_t{1} << n;
    if (n_elems > limits.max_entries) {
        throw ResourceLimitError("A_" + std::to_string(n) + " needs at least 2^" + std::to_string(n) +
                                 " entries, above the configured cap of " + std::to_string(limits.max_entries));
    }
    const std::uint64_t mask = n_elems - 1;

    LaverTable t;
    t.rank_ = n;
    t.width_ = value_width_for(n);
    t.start_.assign(n_elems, 0);
    t.period_log2_.assign(n_elems, 0);

    for (std::uint64_t a = n_elems; a-- > 0;) {
        const std::uint64_t row_start = t.total_entries_;
        t.start_[a] = row_start;
        Element v = static_cast<Element>((a + 1) & mask);
        std::uint64_t len = 0;
        for (;;) {
            if (t.total_entries_ >= limits.max_entries) {
                throw ResourceLimitError("building A_" + std::to_string(n) + " exceeded the cap of " +
                                         std::to_string(limits.max_entries) + " stored entries at row " +
                                         std::to_string(a));
            }
            t.push_value(v);
            ++t.total_entries_;
            ++len;
            if (v == 0) break;
            // v > a, so row v is complete; v * (a+1) sits at index a mod p(v).
            const std::uint64_t vmask = (std::uint64_t{1} << t.period_log2_[v]) - 1;
            v = t.value_at(t.start_[v] + (a & vmask));
        }
        if (!std::has_single_bit(len)) throw std::logic_error("row length is not a power of two");
        t.period_log2_[a] = static_cast<std::uint8_t>(std::countr_zero(len));
    }
    return t;
}

}  // namespace laver
