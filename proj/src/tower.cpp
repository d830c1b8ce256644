#include "laver/tower.hpp"

#include <string>

namespace laver {

TableTower::TableTower(std::vector<std::shared_ptr<const LaverTable>> tables) : tables_(std::move(tables)) {
    if (tables_.empty()) throw std::invalid_argument("a table tower needs at least A_0");
    for (std::size_t m = 0; m < tables_.size(); ++m) {
        if (!tables_[m] || tables_[m]->rank() != m) {
            throw std::invalid_argument("table tower slot " + std::to_string(m) + " does not hold A_" +
                                        std::to_string(m));
        }
    }
}

TableTower TableTower::build(Rank max_rank, const BuildLimits& limits) {
    std::vector<std::shared_ptr<const LaverTable>> tables;
    tables.reserve(max_rank + 1);
    for (Rank m = 0; m <= max_rank; ++m) {
        tables.push_back(std::make_shared<const LaverTable>(build_table(m, limits)));
    }
    return TableTower(std::move(tables));
}

const LaverTable& TableTower::at(Rank m) const {
    if (!has(m)) {
        throw MissingTableError("A_" + std::to_string(m) + " is not available (tables built through A_" +
                                std::to_string(tables_.empty() ? 0 : max_rank()) + ")");
    }
    return *tables_[m];
}

void TableTower::require(Rank m, std::string_view what) const {
    if (!has(m)) {
        throw MissingTableError(std::string(what) + " needs tables through A_" + std::to_string(m) +
                                ", but only A_0..A_" + std::to_string(tables_.empty() ? 0 : max_rank()) +
                                " are loaded");
    }
}

}  // namespace laver
