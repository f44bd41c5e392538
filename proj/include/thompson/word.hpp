#pragma once

// Words over the generating pair {x0, x1}, evaluated through the two
// independent backends: exact PL composition and tree-pair reduction.
// Letters are signed 1-based indices: +1/-1 for x0^{±1}, +2/-2 for x1^{±1}.

#include "thompson/catalog.hpp"
#include "thompson/exprlang.hpp"
#include "thompson/tree_pair.hpp"

#include <optional>
#include <vector>

namespace thompson {

inline PLMap word_to_plmap(const std::vector<int>& letters) {
    PLMap acc;
    for (int letter : letters) {
        const PLMap& gen = std::abs(letter) == 1 ? standard_x0() : standard_x1();
        acc = compose(acc, letter > 0 ? gen : invert(gen));
    }
    return acc;
}

inline TreePair word_to_tree_pair(const std::vector<int>& letters) {
    static const TreePair x0 = from_plmap(standard_x0());
    static const TreePair x1 = from_plmap(standard_x1());
    TreePair acc;
    for (int letter : letters) {
        const TreePair& gen = std::abs(letter) == 1 ? x0 : x1;
        acc = multiply(acc, letter > 0 ? gen : inverse(gen));
    }
    return acc;
}

namespace detail {

inline bool flatten_word(const Expr& e, std::vector<int>& out) {
    const auto& n = e.node().value;
    if (const auto* id = std::get_if<ExprNode::Ident>(&n)) {
        if (id->name == "x0")
            out.push_back(1);
        else if (id->name == "x1")
            out.push_back(2);
        else if (id->name != "id")
            return false;
        return true;
    }
    if (const auto* c = std::get_if<ExprNode::Compose>(&n))
        return flatten_word(c->lhs, out) && flatten_word(c->rhs, out);
    if (const auto* p = std::get_if<ExprNode::Power>(&n)) {
        std::vector<int> base;
        if (!flatten_word(p->base, base))
            return false;
        long reps = p->exponent < 0 ? -p->exponent : p->exponent;
        std::vector<int> unit = base;
        if (p->exponent < 0) {
            unit.clear();
            for (auto it = base.rbegin(); it != base.rend(); ++it)
                unit.push_back(-*it);
        }
        for (long i = 0; i < reps; ++i)
            out.insert(out.end(), unit.begin(), unit.end());
        return true;
    }
    if (const auto* c = std::get_if<ExprNode::Conjugation>(&n)) {
        std::vector<int> base, by;
        if (!flatten_word(c->base, base) || !flatten_word(c->by, by))
            return false;
        for (auto it = by.rbegin(); it != by.rend(); ++it)
            out.push_back(-*it);
        out.insert(out.end(), base.begin(), base.end());
        out.insert(out.end(), by.begin(), by.end());
        return true;
    }
    return false;  // literals are not words over the generators
}

}  // namespace detail

// The expression as a word over {x0^{±1}, x1^{±1}}, when it is one.
inline std::optional<std::vector<int>> word_letters(const Expr& e) {
    std::vector<int> out;
    if (detail::flatten_word(e, out))
        return out;
    return std::nullopt;
}

struct WordVerdict {
    bool tree_identity;
    bool pl_identity;

    bool agree() const { return tree_identity == pl_identity; }
};

inline WordVerdict word_problem(const std::vector<int>& letters) {
    return {is_identity(word_to_tree_pair(letters)), word_to_plmap(letters).is_identity()};
}

}  // namespace thompson
