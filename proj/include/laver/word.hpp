#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "laver/table.hpp"
#include "laver/tower.hpp"

namespace laver {

class WordParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A term of the free one-generated LD algebra. Leaves are either the
// generator j (= 1) or an integer k >= 1, which abbreviates the left-nested
// term 1 = j, k+1 = k * j. Internal nodes are the LD application.
class Word {
public:
    static Word generator();
    static Word integer(std::uint64_t k);

    friend Word operator*(const Word& left, const Word& right);

    // Grammar: expr := term ('*' term)*, left associative;
    // term := integer | 'j' | '(' expr ')'. The literal 1 is the generator.
    static Word parse(std::string_view text);

    // [w]_n, evaluated bottom-up.
    Element evaluate(const LaverTable& table) const;

    // Some(k) when the whole word is an integer leaf (or the generator).
    std::optional<std::uint64_t> integer_value() const;

    // The same word with every integer leaf k > 1 spelled out as
    // (((j*j)*j)...)*j.
    Word expand_integers() const;

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::string to_string() const;

private:
    struct Node {
        std::uint64_t value = 1;  // leaf: integer value (1 = generator)
        std::int32_t left = -1;   // -1 marks a leaf
        std::int32_t right = -1;
    };

    std::int32_t append(const Word& other);
    void write(std::string& out, std::int32_t index, bool parenthesize_app) const;

    // Children precede parents; the root is the last node.
    std::vector<Node> nodes_;
};

struct SignatureResult {
    Rank value = 0;
    bool certified = false;
    Rank bound = 0;  // largest rank consulted
};

// 2-adic valuation of a > 0.
Rank signature(std::uint64_t a);

// Largest n <= bound with [w]_n = 0. Certified when [w]_{n+1} != 0 was
// seen at a rank <= bound; otherwise the true signature may be larger.
SignatureResult signature(const Word& w, const TableTower& tower, Rank bound);

}  // namespace laver
