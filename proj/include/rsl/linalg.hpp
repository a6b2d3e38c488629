#pragma once

// Rank, kernels and inverses. Over Q and Q(i) the rank goes through
// fraction-free (Bareiss) elimination on integral row-scaled copies; every
// other routine is Gauss-Jordan over the field itself.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "rsl/errors.hpp"
#include "rsl/field.hpp"
#include "rsl/matrix.hpp"

namespace rsl {

/// Reduced row echelon form and its pivot columns.
template <class F>
struct Echelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots;
};

template <class F>
Echelon<F> rref(const Matrix<F>& m) {
    const F& f = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<typename F::value_type> a(m.entries().begin(), m.entries().end());
    auto at = [&](std::size_t i, std::size_t j) -> typename F::value_type& { return a[i * cols + j]; };

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && f.is_zero(at(piv, c))) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
        const auto inv = f.inv(at(r, c));
        for (std::size_t j = c; j < cols; ++j) at(r, j) = f.mul(at(r, j), inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || f.is_zero(at(i, c))) continue;
            const auto factor = at(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!f.is_zero(at(r, j))) at(i, j) = f.sub(at(i, j), f.mul(factor, at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {Matrix<F>(f, rows, cols, std::move(a)), std::move(pivots)};
}

namespace detail {

/// Gaussian integer; only what Bareiss needs.
struct GaussInt {
    mpz_class re;
    mpz_class im;
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

inline GaussInt gi_mul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GaussInt gi_sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact quotient a / b in Z[i]; b divides a.
inline GaussInt gi_divexact(const GaussInt& a, const GaussInt& b) {
    mpz_class norm = b.re * b.re + b.im * b.im;
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    GaussInt q;
    mpz_divexact(q.re.get_mpz_t(), re.get_mpz_t(), norm.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), im.get_mpz_t(), norm.get_mpz_t());
    return q;
}

struct IntOps {
    using T = mpz_class;
    static bool is_zero(const T& a) { return sgn(a) == 0; }
    static T mul(const T& a, const T& b) { return a * b; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T divexact(const T& a, const T& b) {
        T q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static T one() { return 1; }
};

struct GaussIntOps {
    using T = GaussInt;
    static bool is_zero(const T& a) { return a.is_zero(); }
    static T mul(const T& a, const T& b) { return gi_mul(a, b); }
    static T sub(const T& a, const T& b) { return gi_sub(a, b); }
    static T divexact(const T& a, const T& b) { return gi_divexact(a, b); }
    static T one() { return {1, 0}; }
};

// Fraction-free elimination over an integral domain. Column skipping keeps
// every intermediate entry a minor of the pivot submatrix, so each division
// by the previous pivot is exact.
template <class Ops>
std::size_t bareiss_rank(std::vector<typename Ops::T> a, std::size_t rows, std::size_t cols) {
    auto at = [&](std::size_t i, std::size_t j) -> typename Ops::T& { return a[i * cols + j]; };
    typename Ops::T prev = Ops::one();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && Ops::is_zero(at(piv, c))) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(at(piv, j), at(r, j));
        const auto pivot = at(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const auto lead = at(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                auto v = Ops::sub(Ops::mul(pivot, at(i, j)), Ops::mul(lead, at(r, j)));
                at(i, j) = Ops::divexact(v, prev);
            }
            at(i, c) = typename Ops::T{};
        }
        prev = pivot;
        ++r;
    }
    return r;
}

// Multiplies each row by the lcm of its denominators.
inline std::vector<mpz_class> integral_rows(const Matrix<RationalField>& m) {
    std::vector<mpz_class> out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j).get_num() * (l / m(i, j).get_den()));
    }
    return out;
}

inline std::vector<GaussInt> integral_rows(const Matrix<GaussianField>& m) {
    std::vector<GaussInt> out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).re.get_den_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).im.get_den_mpz_t());
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& e = m(i, j);
            out.push_back({e.re.get_num() * (l / e.re.get_den()), e.im.get_num() * (l / e.im.get_den())});
        }
    }
    return out;
}

} // namespace detail

namespace detail {

// Drops zero rows and columns; Bareiss rescales every remaining row at each
// step, so differences of near-identity matrices shrink to a few entries first.
template <class F>
Matrix<F> strip_zero_lines(const Matrix<F>& m) {
    const F& f = m.field();
    std::vector<std::size_t> rows, cols;
    std::vector<bool> col_used(m.cols(), false);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool any = false;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!f.is_zero(m(i, j))) {
                any = true;
                col_used[j] = true;
            }
        if (any) rows.push_back(i);
    }
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (col_used[j]) cols.push_back(j);
    if (rows.size() == m.rows() && cols.size() == m.cols()) return m;
    return Matrix<F>::generate(f, rows.size(), cols.size(),
                               [&](std::size_t i, std::size_t j) { return m(rows[i], cols[j]); });
}

} // namespace detail

/// Exact rank.
template <class F>
std::size_t rank(const Matrix<F>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if constexpr (is_rational_field_v<F> || is_gaussian_field_v<F>) {
        const auto s = detail::strip_zero_lines(m);
        if (s.rows() == 0) return 0;
        if constexpr (is_rational_field_v<F>)
            return detail::bareiss_rank<detail::IntOps>(detail::integral_rows(s), s.rows(), s.cols());
        else
            return detail::bareiss_rank<detail::GaussIntOps>(detail::integral_rows(s), s.rows(), s.cols());
    } else {
        return rref(m).pivots.size();
    }
}

/// Rank by plain Gauss-Jordan over the field; an independent route to rank().
template <class F>
std::size_t rank_gauss_jordan(const Matrix<F>& m) {
    return rref(m).pivots.size();
}

/// Reduction of a rational matrix mod p. Throws bad_reduction if p divides a denominator.
inline Matrix<PrimeField> reduce_mod(const Matrix<RationalField>& m, std::uint64_t p) {
    PrimeField gf(p);
    return map_entries(gf, m, [&](const mpq_class& q) { return gf.from_rational(q); });
}

/// max_p rank(M mod p). Never exceeds rank(M); equals it for all but finitely many p.
inline std::size_t modular_rank_certificate(const Matrix<RationalField>& m, const std::vector<std::uint64_t>& primes) {
    std::size_t best = 0;
    for (auto p : primes) {
        const std::size_t r = rank(reduce_mod(m, p));
        if (r > best) best = r;
    }
    return best;
}

/// Columns span the null space {v : Mv = 0}; cols() == m.cols() - rank(m).
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
    const F& f = m.field();
    const auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::vector<typename F::value_type>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::value_type> v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = f.neg(e.reduced(r, free));
        basis.push_back(std::move(v));
    }
    return from_columns(f, m.cols(), basis);
}

/// A maximal independent subset of the columns of m, in order.
template <class F>
Matrix<F> column_space_basis(const Matrix<F>& m) {
    const auto e = rref(m);
    std::vector<std::vector<typename F::value_type>> cols;
    for (auto c : e.pivots) cols.push_back(m.column(c));
    return from_columns(m.field(), m.rows(), cols);
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
    if (!m.is_square()) throw dimension_mismatch("inverse of non-square matrix");
    const std::size_t n = m.rows();
    const auto e = rref(hstack(m, Matrix<F>::identity(m.field(), n)));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw singular_matrix();
    return submatrix(e.reduced, 0, n, n, n);
}

template <class F>
bool is_invertible(const Matrix<F>& m) {
    return m.is_square() && rank(m) == m.rows();
}

/// Extends the independent columns of `partial` by standard basis vectors to a basis of F^n.
template <class F>
Matrix<F> complete_basis(const Matrix<F>& partial) {
    const F& f = partial.field();
    const std::size_t n = partial.rows();
    std::vector<std::vector<typename F::value_type>> cols;
    for (std::size_t j = 0; j < partial.cols(); ++j) cols.push_back(partial.column(j));
    if (rank(partial) != partial.cols()) throw domain_error("complete_basis: columns are dependent");
    for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
        std::vector<typename F::value_type> e(n, f.zero());
        e[i] = f.one();
        cols.push_back(e);
        if (rank(from_columns(f, n, cols)) == cols.size())
            continue;
        cols.pop_back();
    }
    return from_columns(f, n, cols);
}

} // namespace rsl
