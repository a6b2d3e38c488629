#pragma once

// Brute-force references that share no code with the library's elimination.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

/// Determinant mod p by the Leibniz expansion over all permutations.
inline std::int64_t det_mod(const std::vector<std::vector<std::int64_t>>& a, std::int64_t p) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t total = 0;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        std::int64_t term = 1;
        for (std::size_t i = 0; i < n; ++i) term = term * a[i][perm[i]] % p;
        total = (total + (inversions % 2 ? p - term : term)) % p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/// Largest k with a nonvanishing k x k minor, entries already reduced mod p.
inline std::size_t rank_by_minors(const std::vector<std::vector<std::int64_t>>& a, std::int64_t p) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t k = std::min(rows, cols); k > 0; --k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<std::vector<std::int64_t>> minor(k, std::vector<std::int64_t>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) minor[i][j] = a[r[i]][c[j]];
                if (det_mod(minor, p) != 0) return k;
            }
    }
    return 0;
}

} // namespace oracle
