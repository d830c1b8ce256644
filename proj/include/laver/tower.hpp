#pragma once

#include <memory>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "laver/table.hpp"

namespace laver {

class MissingTableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The tables A_0, ..., A_max, shared read-only. Integer arguments are
// reduced mod 2^m before a query against A_m.
class TableTower {
public:
    TableTower() = default;
    explicit TableTower(std::vector<std::shared_ptr<const LaverTable>> tables);

    static TableTower build(Rank max_rank, const BuildLimits& limits = {});

    Rank max_rank() const noexcept { return static_cast<Rank>(tables_.size() - 1); }
    bool has(Rank m) const noexcept { return m < tables_.size(); }

    const LaverTable& at(Rank m) const;

    // Throws MissingTableError naming `what` unless A_m is present.
    void require(Rank m, std::string_view what) const;

    static std::uint64_t reduce(std::uint64_t a, Rank m) noexcept {
        return m >= 64 ? a : (a & ((std::uint64_t{1} << m) - 1));
    }

    std::uint64_t period(std::uint64_t a, Rank m) const {
        return at(m).period(static_cast<Element>(reduce(a, m)));
    }
    unsigned period_log2(std::uint64_t a, Rank m) const {
        return at(m).period_log2(static_cast<Element>(reduce(a, m)));
    }
    Element apply(Rank m, std::uint64_t a, std::uint64_t b) const {
        return at(m).apply(static_cast<Element>(reduce(a, m)), b);
    }
    Element compose(Rank m, std::uint64_t a, std::uint64_t b) const {
        return at(m).compose(static_cast<Element>(reduce(a, m)), static_cast<Element>(reduce(b, m)));
    }

private:
    std::vector<std::shared_ptr<const LaverTable>> tables_;
};

}  // namespace laver
