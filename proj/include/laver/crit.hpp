#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "laver/tower.hpp"
#include "laver/word.hpp"

namespace laver {

// The critical point gamma_idx, identified with its index.
struct GammaIndex {
    Rank idx = 0;
    friend auto operator<=>(const GammaIndex&, const GammaIndex&) = default;
};

struct CertifiedIndex {
    GammaIndex value;
    bool certified = false;
    Rank bound = 0;  // highest table rank consulted
    // When uncertified, `value` is only a lower bound for the true index.
};

class UncertifiedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

CertifiedIndex crit(std::uint64_t a);
CertifiedIndex crit(const Word& w, const TableTower& tower, Rank bound);

// a . gamma_k = gamma_n with n the largest m <= bound such that
// p_m(a mod 2^m) <= 2^k. Certified once p_{n+1} > 2^k has been seen.
// bound defaults to the tower's top rank.
CertifiedIndex act_on_gamma(std::uint64_t a, GammaIndex k, const TableTower& tower,
                            std::optional<Rank> bound = std::nullopt);

// gamma_n is in the range of a iff p_{n+1}(a) = 2 p_n(a). Needs A_{n+1}.
bool in_range(std::uint64_t a, GammaIndex n, const TableTower& tower);

// For a in range of gamma_n, the unique k with a . gamma_k = gamma_n:
// log2 p_n(a). Throws std::invalid_argument if gamma_n is not in range(a).
GammaIndex preimage_index(std::uint64_t a, GammaIndex n, const TableTower& tower);

// Least c >= 1 with gamma_k in range(c). Needs A_{k+1}, k >= 1.
std::uint64_t least_range_witness(GammaIndex k, const TableTower& tower);

}  // namespace laver
