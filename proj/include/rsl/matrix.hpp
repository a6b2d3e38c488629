#pragma once

#include <cctype>
#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rsl/errors.hpp"
#include "rsl/field.hpp"

namespace rsl {

/// Dense row-major matrix over an exact field. Immutable once built.
template <class F>
class Matrix {
public:
    using field_type = F;
    using value_type = typename F::value_type;

    Matrix() = default;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    Matrix(F field, std::size_t rows, std::size_t cols, std::vector<value_type> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw dimension_mismatch("entry count " + std::to_string(data_.size()) + " for " +
                                     std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    /// Builds a matrix entrywise from fn(i, j).
    template <class Fn>
    static Matrix generate(const F& field, std::size_t rows, std::size_t cols, Fn&& fn) {
        std::vector<value_type> e;
        e.reserve(rows * cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) e.push_back(fn(i, j));
        return Matrix(field, rows, cols, std::move(e));
    }

    static Matrix identity(const F& field, std::size_t n) {
        return generate(field, n, n, [&](std::size_t i, std::size_t j) {
            return i == j ? field.one() : field.zero();
        });
    }

    static Matrix zero(const F& field, std::size_t rows, std::size_t cols) { return Matrix(field, rows, cols); }

    /// The matrix unit E_{ij} (zero-based indices).
    static Matrix unit(const F& field, std::size_t n, std::size_t i, std::size_t j) {
        std::vector<value_type> e(n * n, field.zero());
        e[i * n + j] = field.one();
        return Matrix(field, n, n, std::move(e));
    }

    static Matrix diagonal(const F& field, const std::vector<value_type>& diag) {
        const std::size_t n = diag.size();
        return generate(field, n, n, [&](std::size_t i, std::size_t j) {
            return i == j ? diag[i] : field.zero();
        });
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::span<const value_type> entries() const { return data_; }

    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<value_type> column(std::size_t j) const {
        std::vector<value_type> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!field_.is_zero(v)) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (!a.field_.eq(a.data_[k], b.data_[k])) return false;
        return true;
    }

private:
    F field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

namespace detail {

template <class F>
void require_same_shape(const Matrix<F>& a, const Matrix<F>& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_mismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()));
}

} // namespace detail

template <class F>
Matrix<F> add(const Matrix<F>& a, const Matrix<F>& b) {
    detail::require_same_shape(a, b, "add");
    const F& f = a.field();
    return Matrix<F>::generate(f, a.rows(), a.cols(), [&](std::size_t i, std::size_t j) {
        return f.add(a(i, j), b(i, j));
    });
}

template <class F>
Matrix<F> sub(const Matrix<F>& a, const Matrix<F>& b) {
    detail::require_same_shape(a, b, "sub");
    const F& f = a.field();
    return Matrix<F>::generate(f, a.rows(), a.cols(), [&](std::size_t i, std::size_t j) {
        return f.sub(a(i, j), b(i, j));
    });
}

template <class F>
Matrix<F> neg(const Matrix<F>& a) {
    const F& f = a.field();
    return Matrix<F>::generate(f, a.rows(), a.cols(), [&](std::size_t i, std::size_t j) { return f.neg(a(i, j)); });
}

template <class F>
Matrix<F> scalar_mul(const typename F::value_type& s, const Matrix<F>& a) {
    const F& f = a.field();
    return Matrix<F>::generate(f, a.rows(), a.cols(), [&](std::size_t i, std::size_t j) { return f.mul(s, a(i, j)); });
}

template <class F>
Matrix<F> mul(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.rows())
        throw dimension_mismatch("mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
                                 std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const F& f = a.field();
    std::vector<typename F::value_type> out(a.rows() * b.cols(), f.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (f.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const auto& bkj = b(k, j);
                if (f.is_zero(bkj)) continue;
                auto& o = out[i * b.cols() + j];
                o = f.add(o, f.mul(aik, bkj));
            }
        }
    return Matrix<F>(f, a.rows(), b.cols(), std::move(out));
}

/// [a, b] = ab - ba.
template <class F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b) {
    return sub(mul(a, b), mul(b, a));
}

template <class F>
Matrix<F> transpose(const Matrix<F>& a) {
    return Matrix<F>::generate(a.field(), a.cols(), a.rows(), [&](std::size_t i, std::size_t j) { return a(j, i); });
}

/// Block-diagonal a (+) b.
template <class F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b) {
    const F& f = a.field();
    const std::size_t r = a.rows() + b.rows(), c = a.cols() + b.cols();
    return Matrix<F>::generate(f, r, c, [&](std::size_t i, std::size_t j) {
        if (i < a.rows() && j < a.cols()) return a(i, j);
        if (i >= a.rows() && j >= a.cols()) return b(i - a.rows(), j - a.cols());
        return f.zero();
    });
}

/// Embeds a in the top-left corner of a rows x cols zero matrix (the "hat" embedding).
template <class F>
Matrix<F> pad(const Matrix<F>& a, std::size_t rows, std::size_t cols) {
    if (rows < a.rows() || cols < a.cols()) throw dimension_mismatch("pad: target smaller than source");
    const F& f = a.field();
    return Matrix<F>::generate(f, rows, cols, [&](std::size_t i, std::size_t j) {
        return (i < a.rows() && j < a.cols()) ? a(i, j) : f.zero();
    });
}

template <class F>
Matrix<F> submatrix(const Matrix<F>& a, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) {
    if (row0 + rows > a.rows() || col0 + cols > a.cols()) throw dimension_mismatch("submatrix out of range");
    return Matrix<F>::generate(a.field(), rows, cols,
                               [&](std::size_t i, std::size_t j) { return a(row0 + i, col0 + j); });
}

/// [a | b]
template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw dimension_mismatch("hstack row counts differ");
    return Matrix<F>::generate(a.field(), a.rows(), a.cols() + b.cols(), [&](std::size_t i, std::size_t j) {
        return j < a.cols() ? a(i, j) : b(i, j - a.cols());
    });
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols()) throw dimension_mismatch("vstack column counts differ");
    return Matrix<F>::generate(a.field(), a.rows() + b.rows(), a.cols(), [&](std::size_t i, std::size_t j) {
        return i < a.rows() ? a(i, j) : b(i - a.rows(), j);
    });
}

template <class F>
Matrix<F> power(const Matrix<F>& a, unsigned e) {
    if (!a.is_square()) throw dimension_mismatch("power of non-square matrix");
    Matrix<F> result = Matrix<F>::identity(a.field(), a.rows());
    Matrix<F> base = a;
    while (e) {
        if (e & 1u) result = mul(result, base);
        e >>= 1u;
        if (e) base = mul(base, base);
    }
    return result;
}

/// Column vectors as an n x vecs.size() matrix.
template <class F>
Matrix<F> from_columns(const F& f, std::size_t n, const std::vector<std::vector<typename F::value_type>>& vecs) {
    return Matrix<F>::generate(f, n, vecs.size(), [&](std::size_t i, std::size_t j) { return vecs[j][i]; });
}

/// Entrywise field change along a map of scalars.
template <class G, class F, class Fn>
Matrix<G> map_entries(const G& target, const Matrix<F>& a, Fn&& fn) {
    return Matrix<G>::generate(target, a.rows(), a.cols(), [&](std::size_t i, std::size_t j) { return fn(a(i, j)); });
}

// Text format: first line "rows cols fieldtag", then one row per line.

template <class F>
void write_text(std::ostream& os, const Matrix<F>& m) {
    const F& f = m.field();
    os << m.rows() << ' ' << m.cols() << ' ' << f.spec().tag() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << f.format(m(i, j));
        }
        os << '\n';
    }
}

template <class F>
std::string to_text(const Matrix<F>& m) {
    std::ostringstream os;
    write_text(os, m);
    return os.str();
}

namespace detail {

// Reads `count` entry tokens; a detached "i" token belongs to the previous entry.
inline std::vector<std::string> read_entry_tokens(std::istream& is, std::size_t count) {
    std::vector<std::string> tokens;
    tokens.reserve(count);
    std::string tok;
    for (std::size_t k = 0; k < count; ++k) {
        if (!(is >> tok))
            throw parse_error("expected " + std::to_string(count) + " entries, got " + std::to_string(k));
        is >> std::ws;
        if (is.peek() == 'i') {
            is.get();
            const int c = is.peek();
            if (c == std::char_traits<char>::eof() || std::isspace(c))
                tok += " i";
            else
                is.unget();
        }
        tokens.push_back(std::move(tok));
    }
    is.clear(is.rdstate() & ~std::ios::eofbit);
    return tokens;
}

} // namespace detail

/// Reads a matrix whose header tag must match the given field.
template <class F>
Matrix<F> read_text(std::istream& is, const F& f) {
    std::size_t rows = 0, cols = 0;
    std::string tag;
    if (!(is >> rows >> cols >> tag)) throw parse_error("bad matrix header");
    if (FieldSpec::parse(tag) != f.spec())
        throw parse_error("matrix field '" + tag + "' does not match expected '" + f.spec().tag() + "'");
    auto tokens = detail::read_entry_tokens(is, rows * cols);
    std::vector<typename F::value_type> e;
    e.reserve(tokens.size());
    for (const auto& t : tokens) e.push_back(f.parse(t));
    return Matrix<F>(f, rows, cols, std::move(e));
}

template <class F>
Matrix<F> from_text(const std::string& text, const F& f) {
    std::istringstream is(text);
    return read_text(is, f);
}

} // namespace rsl
