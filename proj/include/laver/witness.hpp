#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace laver {

// One counterexample (or undecidable instance) with all the data needed
// to replay it through the primitive operations.
struct Witness {
    enum class Kind { violation, undecided };

    Kind kind = Kind::violation;
    std::uint64_t a = 0;
    std::uint64_t b = 0;  // second element for pair checks, else 0
    std::vector<std::pair<std::string, std::int64_t>> fields;

    Witness& set(std::string name, std::int64_t value) {
        fields.emplace_back(std::move(name), value);
        return *this;
    }

    std::optional<std::int64_t> get(std::string_view name) const {
        for (const auto& [k, v] : fields) {
            if (k == name) return v;
        }
        return std::nullopt;
    }

    friend bool operator<(const Witness& x, const Witness& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
    friend bool operator==(const Witness&, const Witness&) = default;
};

}  // namespace laver
