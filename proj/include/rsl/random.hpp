#pragma once

// Seeded sampling. The generator is std::mt19937_64 (fully specified by the
// C++ standard); integers are drawn as next() % range so that sample sets can
// be reproduced outside C++ without matching any std distribution.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rsl/field.hpp"
#include "rsl/linalg.hpp"
#include "rsl/matrix.hpp"

namespace rsl {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform-ish integer in [lo, hi].
    long range(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    bool coin() { return next() & 1u; }

private:
    std::mt19937_64 engine_;
};

/// Small random scalar: integers in [-bound, bound]; over Q occasionally a
/// fraction with denominator in [1, bound]; over Q(i) both parts drawn so.
template <class F>
typename F::value_type random_scalar(const F& f, Rng& rng, long bound = 5) {
    if constexpr (is_rational_field_v<F>) {
        mpq_class q(rng.range(-bound, bound), rng.range(1, bound));
        q.canonicalize();
        return q;
    } else if constexpr (is_gaussian_field_v<F>) {
        mpq_class re(rng.range(-bound, bound), rng.range(1, bound));
        mpq_class im(rng.range(-bound, bound), rng.range(1, bound));
        re.canonicalize();
        im.canonicalize();
        return {re, im};
    } else {
        return f.from_int(static_cast<long>(rng.next() % f.p));
    }
}

template <class F>
Matrix<F> random_matrix(const F& f, Rng& rng, std::size_t rows, std::size_t cols, long bound = 5) {
    return Matrix<F>::generate(f, rows, cols, [&](std::size_t, std::size_t) { return random_scalar(f, rng, bound); });
}

/// Random matrix with a prescribed rank r (product of random n x r and r x m factors, retried until exact).
template <class F>
Matrix<F> random_matrix_of_rank(const F& f, Rng& rng, std::size_t rows, std::size_t cols, std::size_t r) {
    for (;;) {
        auto m = mul(random_matrix(f, rng, rows, r), random_matrix(f, rng, r, cols));
        if (rank(m) == r) return m;
    }
}

template <class F>
Matrix<F> random_invertible(const F& f, Rng& rng, std::size_t n) {
    for (;;) {
        auto m = random_matrix(f, rng, n, n);
        if (is_invertible(m)) return m;
    }
}

/// Random permutation matrix (Fisher-Yates with Rng::index).
template <class F>
Matrix<F> random_permutation(const F& f, Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
    return Matrix<F>::generate(f, n, n, [&](std::size_t i, std::size_t j) {
        return perm[i] == j ? f.one() : f.zero();
    });
}

/// Random monomial matrix: permutation times an invertible diagonal.
template <class F>
Matrix<F> random_monomial(const F& f, Rng& rng, std::size_t n) {
    std::vector<typename F::value_type> diag;
    for (std::size_t i = 0; i < n; ++i) {
        auto s = random_scalar(f, rng);
        while (f.is_zero(s)) s = random_scalar(f, rng);
        diag.push_back(s);
    }
    return mul(random_permutation(f, rng, n), Matrix<F>::diagonal(f, diag));
}

/// Permutation matrix with random signs; over GF(2) this is just a permutation.
template <class F>
Matrix<F> random_signed_permutation(const F& f, Rng& rng, std::size_t n) {
    std::vector<typename F::value_type> signs;
    for (std::size_t i = 0; i < n; ++i) signs.push_back(rng.coin() ? f.one() : f.neg(f.one()));
    return mul(random_permutation(f, rng, n), Matrix<F>::diagonal(f, signs));
}

/// A random product of `steps` elementary transvections I + c E_ij with c in {-2,...,2},
/// returned with its exact inverse. Over Q the entries stay integral.
template <class F>
std::pair<Matrix<F>, Matrix<F>> random_unimodular(const F& f, Rng& rng, std::size_t n, std::size_t steps) {
    std::vector<typename F::value_type> s(n * n, f.zero()), s_inv(n * n, f.zero());
    for (std::size_t i = 0; i < n; ++i) s[i * n + i] = s_inv[i * n + i] = f.one();
    for (std::size_t t = 0; n >= 2 && t < steps; ++t) {
        const std::size_t i = rng.index(n);
        std::size_t j = rng.index(n - 1);
        if (j >= i) ++j;
        const auto c = f.from_int(rng.coin() ? rng.range(1, 2) : -rng.range(1, 2));
        // s <- s (I + c E_ij): column j += c column i.  s_inv <- (I - c E_ij) s_inv: row i -= c row j.
        for (std::size_t r = 0; r < n; ++r) s[r * n + j] = f.add(s[r * n + j], f.mul(c, s[r * n + i]));
        for (std::size_t col = 0; col < n; ++col)
            s_inv[i * n + col] = f.sub(s_inv[i * n + col], f.mul(c, s_inv[j * n + col]));
    }
    return {Matrix<F>(f, n, n, std::move(s)), Matrix<F>(f, n, n, std::move(s_inv))};
}

} // namespace rsl
