#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>

#include "rsl/errors.hpp"
#include "rsl/linalg.hpp"
#include "rsl/matrix.hpp"

namespace rsl {

/// An exact normalized rank: numerator / denominator.
struct RankDistance {
    std::size_t numerator = 0;
    std::size_t denominator = 1;

    mpq_class value() const {
        mpq_class q(static_cast<unsigned long>(numerator), static_cast<unsigned long>(denominator));
        q.canonicalize();
        return q;
    }
    std::string str() const { return value().get_str(); }

    friend bool operator<(const RankDistance& a, const RankDistance& b) { return a.value() < b.value(); }
    friend bool operator==(const RankDistance& a, const RankDistance& b) { return a.value() == b.value(); }
};

inline const RankDistance& max_distance(const RankDistance& a, const RankDistance& b) { return a < b ? b : a; }

/// rank(M) / M.rows() for a square matrix.
template <class F>
RankDistance normalized_rank(const Matrix<F>& m) {
    if (!m.is_square() || m.rows() == 0) throw dimension_mismatch("normalized rank needs a nonempty square matrix");
    return {rank(m), m.rows()};
}

/// rk(A - B) = rank(A - B) / n for same-size square matrices.
template <class F>
RankDistance strict_distance(const Matrix<F>& a, const Matrix<F>& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw dimension_mismatch("strict distance needs equal square dimensions, got " + std::to_string(a.rows()) +
                                 " and " + std::to_string(b.rows()));
    return normalized_rank(sub(a, b));
}

/// dim im(Â - B̂) / min(n, m), where the hat pads with zeros to the larger size.
template <class F>
RankDistance flexible_distance(const Matrix<F>& a, const Matrix<F>& b) {
    if (!a.is_square() || !b.is_square()) throw dimension_mismatch("flexible distance needs square matrices");
    const std::size_t big = std::max(a.rows(), b.rows());
    const std::size_t small = std::min(a.rows(), b.rows());
    if (small == 0) throw dimension_mismatch("flexible distance undefined for dimension 0");
    return {rank(sub(pad(a, big, big), pad(b, big, big))), small};
}

/// Lower bound |n - m| / min(n, m) that the flexible distance between invertibles always meets.
inline RankDistance dimension_gap(std::size_t n, std::size_t m) {
    return {n > m ? n - m : m - n, std::min(n, m)};
}

/// Basis maximum of a distance and the m-scaled bound on the sup over all of g.
struct MapDistance {
    RankDistance basis_max;
    std::size_t argmax = 0;
    mpq_class uniform_bound;  // basis_max * dim(g)
};

enum class DistanceMode { Strict, Flexible };

} // namespace rsl
