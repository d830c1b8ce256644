#include "laver/word.hpp"

#include <bit>
#include <cctype>
#include <charconv>

namespace laver {

Word Word::generator() { return integer(1); }

Word Word::integer(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("integer words start at 1");
    Word w;
    w.nodes_.push_back(Node{k, -1, -1});
    return w;
}

std::int32_t Word::append(const Word& other) {
    const auto shift = static_cast<std::int32_t>(nodes_.size());
    for (Node node : other.nodes_) {
        if (node.left >= 0) {
            node.left += shift;
            node.right += shift;
        }
        nodes_.push_back(node);
    }
    return static_cast<std::int32_t>(nodes_.size()) - 1;
}

Word operator*(const Word& left, const Word& right) {
    Word w;
    w.nodes_.reserve(left.nodes_.size() + right.nodes_.size() + 1);
    const auto l = w.append(left);
    const auto r = w.append(right);
    w.nodes_.push_back(Word::Node{0, l, r});
    return w;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Word parse() {
        Word w = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character");
        return w;
    }

private:
    Word expr() {
        Word w = term();
        for (;;) {
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                w = w * term();
            } else {
                return w;
            }
        }
    }

    Word term() {
        skip_space();
        if (pos_ >= text_.size()) fail("expected a term");
        const char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Word w = expr();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return w;
        }
        if (ch == 'j') {
            ++pos_;
            return Word::generator();
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::uint64_t k = 0;
            const auto* first = text_.data() + pos_;
            const auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), k);
            if (ec != std::errc{}) fail("integer literal out of range");
            pos_ += static_cast<std::size_t>(ptr - first);
            if (k == 0) fail("0 is not a word; integers start at 1");
            return Word::integer(k);
        }
        fail("expected an integer, 'j' or '('");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const char* what) const {
        throw WordParseError(std::string(what) + " at position " + std::to_string(pos_) + " in word '" +
                             std::string(text_) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Word Word::parse(std::string_view text) { return Parser(text).parse(); }

Element Word::evaluate(const LaverTable& table) const {
    const std::uint64_t mask = table.size() - 1;
    std::vector<Element> values(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& node = nodes_[i];
        if (node.left < 0) {
            values[i] = static_cast<Element>(node.value & mask);
        } else {
            values[i] = table.apply(values[node.left], values[node.right]);
        }
    }
    return values.back();
}

std::optional<std::uint64_t> Word::integer_value() const {
    if (nodes_.size() == 1) return nodes_.front().value;
    return std::nullopt;
}

Word Word::expand_integers() const {
    std::vector<Word> built;
    built.reserve(nodes_.size());
    for (const Node& node : nodes_) {
        if (node.left < 0) {
            Word w = generator();
            for (std::uint64_t k = 1; k < node.value; ++k) w = w * generator();
            built.push_back(std::move(w));
        } else {
            built.push_back(built[node.left] * built[node.right]);
        }
    }
    return built.back();
}

void Word::write(std::string& out, std::int32_t index, bool parenthesize_app) const {
    const Node& node = nodes_[index];
    if (node.left < 0) {
        out += std::to_string(node.value);
        return;
    }
    if (parenthesize_app) out += '(';
    write(out, node.left, false);
    out += '*';
    write(out, node.right, true);
    if (parenthesize_app) out += ')';
}

std::string Word::to_string() const {
    std::string out;
    write(out, static_cast<std::int32_t>(nodes_.size()) - 1, false);
    return out;
}

Rank signature(std::uint64_t a) {
    if (a == 0) throw std::invalid_argument("signature of 0 is unbounded");
    return static_cast<Rank>(std::countr_zero(a));
}

SignatureResult signature(const Word& w, const TableTower& tower, Rank bound) {
    tower.require(bound, "signature");
    if (auto k = w.integer_value()) {
        return SignatureResult{signature(*k), true, bound};
    }
    // [w]_{m+1} = 0 implies [w]_m = 0, so the zero ranks form a prefix.
    for (Rank m = 1; m <= bound; ++m) {
        if (w.evaluate(tower.at(m)) != 0) return SignatureResult{m - 1, true, m};
    }
    return SignatureResult{bound, false, bound};
}

}  // namespace laver
