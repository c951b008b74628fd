#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "species/expr.hpp"

namespace species {

/// Structure counting by explicit enumeration, independent of the polynomial
/// and series machinery: products run over all 2^n ordered subset splits,
/// derivatives count on n+1 labels, partitional composition runs over all set
/// partitions. Accepts the concrete subset of the expression language:
/// One, X, E, En, Cn, L, Cyc, Graphs, +, *, ^k, D(.), comp(.,.).
class Oracle {
public:
    static constexpr int kGuard = 9;           // public cardinality guard
    static constexpr int kInternalGuard = 10;  // one derivative layer of headroom

    Int enumerate_count(const ExprPtr& e, int n) {
        if (n < 0) throw DomainError("cardinality must be >= 0");
        if (n > kGuard)
            throw ResourceLimitError("enumeration guarded at n <= " + std::to_string(kGuard));
        retain(e);
        return count(*e, n);
    }

    // |F[p+q]| = |F[p]| * |F[q]|, the count-level product-split condition.
    bool check_product_split(const ExprPtr& e, int p, int q) {
        if (p < 0 || q < 0 || p + q > kGuard)
            throw ResourceLimitError("enumeration guarded at n <= " + std::to_string(kGuard));
        retain(e);
        return count(*e, p + q) == count(*e, p) * count(*e, q);
    }

private:
    // the memo is keyed by node address, so every root must stay alive as
    // long as the cache does
    std::vector<ExprPtr> roots_;
    std::map<std::pair<const Expr*, int>, Int> memo_;
    std::map<std::tuple<const Expr*, long long, int>, Int> pow_memo_;

    void retain(const ExprPtr& e) { roots_.push_back(e); }

    Int count(const Expr& e, int n) {
        if (n > kInternalGuard)
            throw ResourceLimitError("derived enumeration exceeds the internal guard");
        auto key = std::make_pair(&e, n);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Int r = compute(e, n);
        memo_.emplace(key, r);
        return r;
    }

    Int compute(const Expr& e, int n) {
        using K = Expr::Kind;
        switch (e.kind) {
            case K::Atom: return atom_count(e, n);
            case K::Add: return count(*e.args[0], n) + count(*e.args[1], n);
            case K::Mul: {
                Int r = 0;
                for (int mask = 0; mask < (1 << n); ++mask) {
                    int k = popcount(mask);
                    Int a = count(*e.args[0], k);
                    if (a == 0) continue;
                    r += a * count(*e.args[1], n - k);
                }
                return r;
            }
            case K::PowInt: return power_count(*e.args[0], e.exponent, n);
            case K::Call:
                if (e.name == "D") return count(*e.args[0], n + 1);
                if (e.name == "comp") return compose_count(*e.args[0], *e.args[1], n);
                throw DomainError("'" + e.name + "' is not a concrete species operation");
            default:
                throw DomainError("not a concrete species expression");
        }
    }

    Int power_count(const Expr& base, long long k, int n) {
        if (k == 0) return n == 0 ? 1 : 0;
        if (k == 1) return count(base, n);
        auto key = std::make_tuple(&base, k, n);
        auto it = pow_memo_.find(key);
        if (it != pow_memo_.end()) return it->second;
        Int r = 0;
        for (int mask = 0; mask < (1 << n); ++mask) {
            int c = popcount(mask);
            Int a = count(base, c);
            if (a == 0) continue;
            r += a * power_count(base, k - 1, n - c);
        }
        pow_memo_.emplace(key, r);
        return r;
    }

    static int popcount(int v) {
        int c = 0;
        while (v) {
            v &= v - 1;
            ++c;
        }
        return c;
    }

    Int atom_count(const Expr& e, int n) {
        switch (e.atom) {
            case AtomKind::One: return n == 0 ? 1 : 0;
            case AtomKind::X: return n == 1 ? 1 : 0;
            case AtomKind::E: return 1;
            case AtomKind::En: return n == e.index ? 1 : 0;
            case AtomKind::Cn: return n == e.index ? cycle_count(n) : 0;
            case AtomKind::Cyc: return n >= 1 ? cycle_count(n) : 0;
            case AtomKind::L: return order_count(n);
            case AtomKind::Graphs: return graph_count(n);
            default:
                throw DomainError("not a concrete species atom");
        }
    }

    // cyclic orders on [n]: label 1 pinned in front, the rest arranged freely
    static Int cycle_count(int n) {
        if (n == 0) return 0;
        std::vector<int> rest(n - 1);
        std::iota(rest.begin(), rest.end(), 2);
        Int c = 0;
        do { ++c; } while (std::next_permutation(rest.begin(), rest.end()));
        return c;
    }

    static Int order_count(int n) {
        std::vector<int> labels(n);
        std::iota(labels.begin(), labels.end(), 1);
        Int c = 0;
        do { ++c; } while (std::next_permutation(labels.begin(), labels.end()));
        return c;
    }

    // simple graphs on [n]: one independent in/out choice per edge; small
    // edge sets are walked subset by subset
    static Int graph_count(int n) {
        long long edges = static_cast<long long>(n) * (n - 1) / 2;
        if (edges <= 16) {
            Int c = 0;
            for (long long mask = 0; mask < (1LL << edges); ++mask) ++c;
            return c;
        }
        return int_pow(2, edges);
    }

    Int compose_count(const Expr& f, const Expr& g, int n) {
        if (count(g, 0) != 0)
            throw NotInitializedError(
                "composition needs an inner species with no structure on the empty set");
        if (n == 0) return count(f, 0);
        std::vector<int> sizes;
        Int total = 0;
        assign_blocks(f, g, n, 0, sizes, total);
        return total;
    }

    // each set partition reached exactly once: element i joins an existing
    // block or opens a new one
    void assign_blocks(const Expr& f, const Expr& g, int n, int i, std::vector<int>& sizes,
                       Int& total) {
        if (i == n) {
            Int inner = 1;
            for (int s : sizes) {
                inner *= count(g, s);
                if (inner == 0) return;
            }
            total += count(f, static_cast<int>(sizes.size())) * inner;
            return;
        }
        for (size_t b = 0; b < sizes.size(); ++b) {
            ++sizes[b];
            assign_blocks(f, g, n, i + 1, sizes, total);
            --sizes[b];
        }
        sizes.push_back(1);
        assign_blocks(f, g, n, i + 1, sizes, total);
        sizes.pop_back();
    }
};

struct OracleRow {
    int n;
    Int enumerated;
    Int series_count;
    bool match;
};

struct OracleReport {
    std::string expr;
    std::vector<OracleRow> rows;
    bool pass = true;
    int first_mismatch = -1;
};

} // namespace species
