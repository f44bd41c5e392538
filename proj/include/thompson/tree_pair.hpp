#pragma once

// Tree-pair diagrams for elements of F. A pair of finite binary trees with
// equal leaf counts encodes the PL map taking the domain tree's standard
// dyadic partition to the range tree's, affinely leaf by leaf.
//
// Trees are stored as preorder shape strings: '1' is a caret, '0' a leaf.

#include "thompson/plmap.hpp"
#include "thompson/rational.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thompson {

class BinTree {
public:
    BinTree() : shape_("0") {}

    static BinTree leaf() { return BinTree(); }

    static BinTree caret(const BinTree& left, const BinTree& right) {
        BinTree t;
        t.shape_ = "1" + left.shape_ + right.shape_;
        return t;
    }

    static BinTree from_shape(std::string shape) {
        BinTree t;
        t.shape_ = std::move(shape);
        std::size_t end = t.subtree_end(0);
        if (end != t.shape_.size())
            throw std::invalid_argument("malformed tree shape");
        return t;
    }

    // Balanced-parenthesis form: a leaf is "()", a caret "(LR)".
    static BinTree parse(std::string_view text) {
        std::size_t pos = 0;
        std::string shape;
        parse_node(text, pos, shape);
        if (pos != text.size())
            throw std::invalid_argument("trailing characters in tree literal");
        return from_shape(std::move(shape));
    }

    std::string to_parens() const {
        std::string out;
        std::size_t pos = 0;
        write_parens(pos, out);
        return out;
    }

    const std::string& shape() const { return shape_; }

    int leaf_count() const {
        return static_cast<int>(std::count(shape_.begin(), shape_.end(), '0'));
    }

    bool is_leaf() const { return shape_ == "0"; }

    // End (exclusive) of the subtree starting at `pos`.
    std::size_t subtree_end(std::size_t pos) const {
        long pending = 1;
        while (pending > 0) {
            if (pos >= shape_.size())
                throw std::invalid_argument("malformed tree shape");
            pending += shape_[pos] == '1' ? 1 : -1;
            ++pos;
        }
        return pos;
    }

    bool operator==(const BinTree&) const = default;

private:
    static void parse_node(std::string_view text, std::size_t& pos, std::string& shape) {
        if (pos >= text.size() || text[pos] != '(')
            throw std::invalid_argument("expected '(' in tree literal");
        ++pos;
        if (pos < text.size() && text[pos] == ')') {
            ++pos;
            shape += '0';
            return;
        }
        shape += '1';
        parse_node(text, pos, shape);
        parse_node(text, pos, shape);
        if (pos >= text.size() || text[pos] != ')')
            throw std::invalid_argument("expected ')' in tree literal");
        ++pos;
    }

    void write_parens(std::size_t& pos, std::string& out) const {
        if (shape_[pos] == '0') {
            ++pos;
            out += "()";
            return;
        }
        ++pos;
        out += '(';
        write_parens(pos, out);
        write_parens(pos, out);
        out += ')';
    }

    std::string shape_;
};

// Left-to-right leaves of the halving partition of [0,1] along the tree.
inline std::vector<ClosedInterval> leaf_partition(const BinTree& t) {
    std::vector<ClosedInterval> out;
    out.reserve(static_cast<std::size_t>(t.leaf_count()));
    const std::string& s = t.shape();
    std::size_t pos = 0;
    auto walk = [&](auto&& self, const Rational& lo, const Rational& hi) -> void {
        if (s[pos] == '0') {
            ++pos;
            out.push_back({lo, hi});
            return;
        }
        ++pos;
        Rational mid = (lo + hi) / 2;
        self(self, lo, mid);
        self(self, mid, hi);
    };
    walk(walk, Rational(0), Rational(1));
    return out;
}

struct TreePair {
    BinTree domain;
    BinTree range;

    TreePair() = default;
    TreePair(BinTree d, BinTree r) : domain(std::move(d)), range(std::move(r)) {
        if (domain.leaf_count() != range.leaf_count())
            throw std::invalid_argument("tree pair needs equal leaf counts");
    }

    int leaf_count() const { return domain.leaf_count(); }
    bool operator==(const TreePair&) const = default;
};

inline TreePair inverse(const TreePair& p) { return TreePair(p.range, p.domain); }

inline PLMap to_plmap(const TreePair& p) {
    auto dom = leaf_partition(p.domain);
    auto rng = leaf_partition(p.range);
    std::vector<BreakPoint> pts;
    pts.reserve(dom.size() + 1);
    pts.push_back({Rational(0), Rational(0)});
    for (std::size_t i = 0; i < dom.size(); ++i)
        pts.push_back({dom[i].hi, rng[i].hi});
    return PLMap(std::move(pts));
}

namespace detail {

// Cancel matched sibling-leaf carets until none remain.
inline void reduce_shapes(std::string& dom, std::string& rng) {
    auto cancellable = [](const std::string& s) {
        // leaf indices (0-based) of the first leaf of each "100" caret
        std::vector<int> out;
        int zeros = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.compare(i, 3, "100") == 0)
                out.push_back(zeros);
            if (s[i] == '0')
                ++zeros;
        }
        return out;
    };
    auto cancel_at = [](std::string& s, int leaf_index) {
        int zeros = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (zeros == leaf_index && s.compare(i, 3, "100") == 0) {
                s.replace(i, 3, "0");
                return;
            }
            if (s[i] == '0')
                ++zeros;
        }
        throw std::logic_error("reduce: lost a caret");
    };
    for (;;) {
        auto d = cancellable(dom);
        auto r = cancellable(rng);
        int pick = -1;
        for (int i : d) {
            if (std::find(r.begin(), r.end(), i) != r.end()) {
                pick = i;
                break;
            }
        }
        if (pick < 0)
            return;
        cancel_at(dom, pick);
        cancel_at(rng, pick);
    }
}

// Superimpose two trees: the smallest common refinement.
inline void merge_shapes(const std::string& a, std::size_t& ia, const std::string& b, std::size_t& ib,
                         std::string& out) {
    bool ca = a[ia] == '1';
    bool cb = b[ib] == '1';
    if (!ca && !cb) {
        ++ia;
        ++ib;
        out += '0';
        return;
    }
    out += '1';
    if (ca && cb) {
        ++ia;
        ++ib;
        merge_shapes(a, ia, b, ib, out);
        merge_shapes(a, ia, b, ib, out);
        return;
    }
    if (ca) {
        // b is a leaf here: copy both subtrees of a's caret
        ++ib;
        ++ia;
        std::size_t start = ia;
        std::size_t end = start;
        long pending = 2;
        while (pending > 0) {
            pending += a[end] == '1' ? 1 : -1;
            ++end;
        }
        out.append(a, start, end - start);
        ia = end;
        return;
    }
    // cb only: mirror case
    ++ia;
    ++ib;
    std::size_t start = ib;
    std::size_t end = start;
    long pending = 2;
    while (pending > 0) {
        pending += b[end] == '1' ? 1 : -1;
        ++end;
    }
    out.append(b, start, end - start);
    ib = end;
}

// For refinement E of T, the subtree of E grafted at each leaf of T.
inline void carried_subtrees(const std::string& e, std::size_t& ie, const std::string& t,
                             std::size_t& it, std::vector<std::string>& out) {
    if (t[it] == '0') {
        ++it;
        std::size_t start = ie;
        long pending = 1;
        while (pending > 0) {
            pending += e[ie] == '1' ? 1 : -1;
            ++ie;
        }
        out.push_back(e.substr(start, ie - start));
        return;
    }
    if (e[ie] != '1')
        throw std::logic_error("carried_subtrees: not a refinement");
    ++ie;
    ++it;
    carried_subtrees(e, ie, t, it, out);
    carried_subtrees(e, ie, t, it, out);
}

inline std::string graft(const std::string& t, const std::vector<std::string>& subtrees) {
    std::string out;
    std::size_t leaf = 0;
    for (char c : t) {
        if (c == '1')
            out += '1';
        else
            out += subtrees.at(leaf++);
    }
    return out;
}

}  // namespace detail

inline TreePair reduce(const TreePair& p) {
    std::string dom = p.domain.shape();
    std::string rng = p.range.shape();
    detail::reduce_shapes(dom, rng);
    return TreePair(BinTree::from_shape(std::move(dom)), BinTree::from_shape(std::move(rng)));
}

inline bool is_identity(const TreePair& p) { return reduce(p).domain.is_leaf(); }

// Apply `first`, then `second` (same order convention as compose on maps).
inline TreePair multiply(const TreePair& first, const TreePair& second) {
    const std::string& b = first.range.shape();
    const std::string& c = second.domain.shape();
    std::string e;
    std::size_t ib = 0, ic = 0;
    detail::merge_shapes(b, ib, c, ic, e);

    std::vector<std::string> onto_b, onto_c;
    std::size_t ie = 0, it = 0;
    detail::carried_subtrees(e, ie, b, it, onto_b);
    ie = 0;
    it = 0;
    detail::carried_subtrees(e, ie, c, it, onto_c);

    std::string dom = detail::graft(first.domain.shape(), onto_b);
    std::string rng = detail::graft(second.range.shape(), onto_c);
    detail::reduce_shapes(dom, rng);
    return TreePair(BinTree::from_shape(std::move(dom)), BinTree::from_shape(std::move(rng)));
}

// Reduced pair for an F-valid map: refine the standard dyadic partition until
// the map is affine with a standard dyadic image on every part.
inline TreePair from_plmap(const PLMap& f) {
    if (auto v = validate_f(f); !v.ok)
        throw std::invalid_argument("from_plmap: " + v.violation);

    const auto& pts = f.points();
    long depth_budget = 64;
    for (const auto& p : pts) {
        depth_budget += static_cast<long>(dyadic_decompose(p.x)->k);
        depth_budget += static_cast<long>(dyadic_decompose(p.y)->k);
    }

    auto has_interior_break = [&](const Rational& lo, const Rational& hi) {
        for (const auto& p : pts)
            if (lo < p.x && p.x < hi)
                return true;
        return false;
    };
    auto standard_dyadic = [](const Rational& lo, const Rational& hi) {
        Rational len = hi - lo;  // must be 2^-j with lo a multiple of it
        if (num(len) != 1 || !log2_exact(den(len)))
            return false;
        return den(lo / len) == 1;
    };

    std::string dom_shape;
    std::vector<ClosedInterval> images;
    auto walk = [&](auto&& self, const Rational& lo, const Rational& hi, long depth) -> void {
        if (depth > depth_budget)
            throw std::logic_error("from_plmap: refinement did not terminate");
        Rational flo = f(lo), fhi = f(hi);
        if (!has_interior_break(lo, hi) && standard_dyadic(flo, fhi)) {
            dom_shape += '0';
            images.push_back({flo, fhi});
            return;
        }
        dom_shape += '1';
        Rational mid = (lo + hi) / 2;
        self(self, lo, mid, depth + 1);
        self(self, mid, hi, depth + 1);
    };
    walk(walk, Rational(0), Rational(1), 0);

    // The image intervals tile [0,1] by standard dyadic intervals; rebuild
    // the unique tree with that leaf partition.
    std::string rng_shape;
    auto build_range = [&](auto&& self, const Rational& lo, const Rational& hi, std::size_t first,
                           std::size_t last) -> void {
        if (last - first == 1) {
            if (images[first].lo != lo || images[first].hi != hi)
                throw std::logic_error("from_plmap: image partition mismatch");
            rng_shape += '0';
            return;
        }
        rng_shape += '1';
        Rational mid = (lo + hi) / 2;
        std::size_t split = first;
        while (split < last && images[split].lo < mid)
            ++split;
        self(self, lo, mid, first, split);
        self(self, mid, hi, split, last);
    };
    build_range(build_range, Rational(0), Rational(1), 0, images.size());

    return TreePair(BinTree::from_shape(std::move(dom_shape)), BinTree::from_shape(std::move(rng_shape)));
}

namespace detail {

inline std::vector<Int> catalan_by_leaves(int n) {
    // T[k] = number of binary trees with k leaves
    std::vector<Int> t(static_cast<std::size_t>(n) + 1);
    if (n >= 1)
        t[1] = 1;
    for (int k = 2; k <= n; ++k) {
        Int sum = 0;
        for (int l = 1; l < k; ++l)
            sum += t[l] * t[k - l];
        t[k] = sum;
    }
    return t;
}

inline Int rand_below(const Int& bound, std::mt19937_64& rng) {
    if (bound <= 1)
        return 0;
    unsigned bits = msb(bound) + 1;
    unsigned words = (bits + 63) / 64;
    Int window = Int(1) << (64 * words);
    Int limit = window - window % bound;
    for (;;) {
        Int r = 0;
        for (unsigned w = 0; w < words; ++w)
            r = (r << 64) | Int(rng());
        if (r < limit)
            return r % bound;
    }
}

inline std::string random_tree_shape(int leaves, const std::vector<Int>& table, std::mt19937_64& rng) {
    if (leaves == 1)
        return "0";
    Int r = rand_below(table[static_cast<std::size_t>(leaves)], rng);
    Int acc = 0;
    for (int l = 1; l < leaves; ++l) {
        acc += table[static_cast<std::size_t>(l)] * table[static_cast<std::size_t>(leaves - l)];
        if (r < acc)
            return "1" + random_tree_shape(l, table, rng) +
                   random_tree_shape(leaves - l, table, rng);
    }
    throw std::logic_error("random_tree_shape: weight walk fell through");
}

}  // namespace detail

// Deterministic pseudo-random pair: two independent uniform random tree
// shapes with the given leaf count, drawn from a seeded mt19937_64.
inline TreePair random_element(int leaves, unsigned long long seed) {
    if (leaves < 1)
        throw std::invalid_argument("random_element: leaves must be >= 1");
    std::mt19937_64 rng(seed);
    auto table = detail::catalan_by_leaves(leaves);
    BinTree dom = BinTree::from_shape(detail::random_tree_shape(leaves, table, rng));
    BinTree rng_tree = BinTree::from_shape(detail::random_tree_shape(leaves, table, rng));
    return TreePair(std::move(dom), std::move(rng_tree));
}

}  // namespace thompson
