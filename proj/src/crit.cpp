#include "laver/crit.hpp"

#include <string>

namespace laver {

CertifiedIndex crit(std::uint64_t a) {
    return CertifiedIndex{GammaIndex{signature(a)}, true, 0};
}

CertifiedIndex crit(const Word& w, const TableTower& tower, Rank bound) {
    const auto s = signature(w, tower, bound);
    return CertifiedIndex{GammaIndex{s.value}, s.certified, s.bound};
}

CertifiedIndex act_on_gamma(std::uint64_t a, GammaIndex k, const TableTower& tower, std::optional<Rank> bound) {
    const Rank top = bound.value_or(tower.max_rank());
    tower.require(top, "act_on_gamma");
    // p_m(a) is nondecreasing in m and p_0 = 1, so the ranks with
    // p_m(a) <= 2^k form a prefix [0, n].
    for (Rank m = 1; m <= top; ++m) {
        if (tower.period_log2(a, m) > k.idx) return CertifiedIndex{GammaIndex{m - 1}, true, m};
    }
    return CertifiedIndex{GammaIndex{top}, false, top};
}

bool in_range(std::uint64_t a, GammaIndex n, const TableTower& tower) {
    tower.require(n.idx + 1, "in_range");
    return tower.period_log2(a, n.idx + 1) == tower.period_log2(a, n.idx) + 1;
}

GammaIndex preimage_index(std::uint64_t a, GammaIndex n, const TableTower& tower) {
    if (!in_range(a, n, tower)) {
        throw std::invalid_argument("gamma_" + std::to_string(n.idx) + " is not in the range of " + std::to_string(a));
    }
    return GammaIndex{tower.period_log2(a, n.idx)};
}

std::uint64_t least_range_witness(GammaIndex k, const TableTower& tower) {
    if (k.idx == 0) throw std::invalid_argument("least_range_witness needs k >= 1");
    tower.require(k.idx + 1, "least_range_witness");
    // 2^k - 1 always works: (2^k - 1) . gamma_0 = gamma_k.
    const std::uint64_t limit = std::uint64_t{1} << k.idx;
    for (std::uint64_t c = 1; c < limit; ++c) {
        if (in_range(c, k, tower)) return c;
    }
    throw std::logic_error("no element below 2^k has gamma_k in its range");
}

}  // namespace laver
