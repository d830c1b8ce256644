#pragma once

// Test-only oracle: the full 2^n x 2^n Laver table in the classical
// 1-based convention (elements 1..2^n, 2^n * b = b), filled row by row
// without any period compression. Independent of laver::build_table.

#include <cstdint>
#include <vector>

namespace oracle {

class DenseTable {
public:
    explicit DenseTable(unsigned n) : n_(n), size_(std::uint64_t{1} << n), cells_((size_ + 1) * (size_ + 1), 0) {
        for (std::uint64_t b = 1; b <= size_; ++b) at(size_, b) = b;
        for (std::uint64_t a = size_ - 1; a >= 1; --a) {
            at(a, 1) = a + 1;
            for (std::uint64_t b = 1; b < size_; ++b) at(a, b + 1) = at(at(a, b), a + 1);
        }
    }

    unsigned rank() const { return n_; }
    std::uint64_t size() const { return size_; }

    // 0-based interface: 0 stands for 2^n.
    std::uint64_t op(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t x = lift(a), y = lift(b);
        return at(x, y) % size_;
    }

    std::uint64_t period(std::uint64_t a) const {
        for (std::uint64_t b = 1; b <= size_; ++b) {
            if (op(a, b) == 0) return b;
        }
        return 0;
    }

    std::uint64_t threshold(std::uint64_t a) const {
        for (std::uint64_t c = 1; c <= size_; ++c) {
            if (op(a, c) >= size_ / 2) return c;
        }
        return 0;
    }

    bool left_distributive() const {
        for (std::uint64_t a = 0; a < size_; ++a)
            for (std::uint64_t b = 0; b < size_; ++b)
                for (std::uint64_t c = 0; c < size_; ++c)
                    if (op(a, op(b, c)) != op(op(a, b), op(a, c))) return false;
        return true;
    }

private:
    std::uint64_t lift(std::uint64_t a) const {
        const std::uint64_t r = a % size_;
        return r == 0 ? size_ : r;
    }
    std::uint64_t& at(std::uint64_t a, std::uint64_t b) { return cells_[a * (size_ + 1) + b]; }
    std::uint64_t at(std::uint64_t a, std::uint64_t b) const { return cells_[a * (size_ + 1) + b]; }

    unsigned n_;
    std::uint64_t size_;
    std::vector<std::uint64_t> cells_;
};

// Oracle towers A_0..A_max.
inline std::vector<DenseTable> dense_tower(unsigned max) {
    std::vector<DenseTable> out;
    for (unsigned m = 0; m <= max; ++m) out.emplace_back(m);
    return out;
}

// gamma_k in range(a) by the period-doubling criterion on dense tables.
inline bool dense_in_range(const std::vector<DenseTable>& t, std::uint64_t a, unsigned k) {
    return t[k + 1].period(a) == 2 * t[k].period(a);
}

}  // namespace oracle
