#pragma once

// Compressions [M]_{U,B,p} = p M ι of n x n matrices to a k-dimensional
// subspace U (basis B = columns of ι, projection p with p ι = I_k) and the
// rank inequalities they satisfy.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rsl/errors.hpp"
#include "rsl/linalg.hpp"
#include "rsl/matrix.hpp"
#include "rsl/random.hpp"

namespace rsl {

template <class F>
class CompressionFrame {
public:
    /// iota: n x k of full column rank; proj: k x n with proj * iota = I_k.
    CompressionFrame(Matrix<F> iota, Matrix<F> proj) : iota_(std::move(iota)), proj_(std::move(proj)) {
        if (iota_.cols() == 0) throw domain_error("compression to a 0-dimensional subspace");
        if (proj_.rows() != iota_.cols() || proj_.cols() != iota_.rows())
            throw dimension_mismatch("frame: iota is " + std::to_string(iota_.rows()) + "x" +
                                     std::to_string(iota_.cols()) + ", proj is " + std::to_string(proj_.rows()) +
                                     "x" + std::to_string(proj_.cols()));
        if (!(mul(proj_, iota_) == Matrix<F>::identity(iota_.field(), iota_.cols())))
            throw domain_error("frame: proj * iota is not the identity");
    }

    std::size_t ambient_dim() const { return iota_.rows(); }
    std::size_t dim() const { return iota_.cols(); }
    const Matrix<F>& iota() const { return iota_; }
    const Matrix<F>& proj() const { return proj_; }

    /// iota * proj, an idempotent n x n matrix with image U.
    Matrix<F> idempotent() const { return mul(iota_, proj_); }

private:
    Matrix<F> iota_;
    Matrix<F> proj_;
};

/// First k coordinates with coordinate projection.
template <class F>
CompressionFrame<F> corner_frame(const F& f, std::size_t n, std::size_t k) {
    if (k == 0) throw domain_error("corner frame with k = 0");
    if (k > n) throw dimension_mismatch("corner frame with k > n");
    auto iota = Matrix<F>::generate(f, n, k, [&](std::size_t i, std::size_t j) { return i == j ? f.one() : f.zero(); });
    return CompressionFrame<F>(iota, transpose(iota));
}

/// Random subspace and a random (generally non-orthogonal) projection onto it:
/// p is the first k rows of [iota | C]^{-1} for a random complement C.
template <class F>
CompressionFrame<F> random_frame(const F& f, Rng& rng, std::size_t n, std::size_t k) {
    if (k == 0) throw domain_error("random frame with k = 0");
    if (k > n) throw dimension_mismatch("random frame with k > n");
    for (;;) {
        auto full = random_matrix(f, rng, n, n);
        if (!is_invertible(full)) continue;
        auto iota = submatrix(full, 0, 0, n, k);
        auto proj = submatrix(inverse(full), 0, 0, k, n);
        return CompressionFrame<F>(std::move(iota), std::move(proj));
    }
}

template <class F>
Matrix<F> compress(const Matrix<F>& m, const CompressionFrame<F>& frame) {
    if (!m.is_square() || m.rows() != frame.ambient_dim())
        throw dimension_mismatch("compress: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                 ", frame ambient dimension " + std::to_string(frame.ambient_dim()));
    return mul(mul(frame.proj(), m), frame.iota());
}

/// One inequality lhs <= rhs (or lhs >= rhs) between exact integers.
struct InequalityReport {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 0;
    long lhs = 0;
    long rhs = 0;
    bool pass = false;
};

/// rank([M]_U) >= rank(M) - 2(n - k).
template <class F>
InequalityReport verify_rank_lower(const Matrix<F>& m, const CompressionFrame<F>& frame) {
    const long n = static_cast<long>(frame.ambient_dim()), k = static_cast<long>(frame.dim());
    InequalityReport r{"rank_lower", frame.ambient_dim(), frame.dim()};
    r.lhs = static_cast<long>(rank(compress(m, frame)));
    r.rhs = static_cast<long>(rank(m)) - 2 * (n - k);
    r.pass = r.lhs >= r.rhs;
    return r;
}

/// rank([M1 M2]_U - [M1]_U [M2]_U) <= n - k.
template <class F>
InequalityReport verify_mult_defect(const Matrix<F>& m1, const Matrix<F>& m2, const CompressionFrame<F>& frame) {
    InequalityReport r{"mult_defect", frame.ambient_dim(), frame.dim()};
    auto diff = sub(compress(mul(m1, m2), frame), mul(compress(m1, frame), compress(m2, frame)));
    r.lhs = static_cast<long>(rank(diff));
    r.rhs = static_cast<long>(frame.ambient_dim() - frame.dim());
    r.pass = r.lhs <= r.rhs;
    return r;
}

template <class F>
struct AlignmentResult {
    Matrix<F> a;       // k x k invertible
    Matrix<F> a_inv;
    std::size_t intersection_dim = 0;
    std::vector<InequalityReport> checks;  // rank([M]_1 - A [M]_2 A^{-1}) <= 4(n - k)
    bool pass = true;
};

/// The conjugator A of the two-frame comparison. W = U1 ∩ U2 comes from the
/// kernel of [iota1 | -iota2]; its coordinates in each frame are completed to
/// bases C1, C2 of F^k and A = C1 C2^{-1}. A depends only on the frames.
template <class F>
AlignmentResult<F> align_compressions(const CompressionFrame<F>& frame1, const CompressionFrame<F>& frame2,
                                      const std::vector<Matrix<F>>& ms) {
    if (frame1.ambient_dim() != frame2.ambient_dim() || frame1.dim() != frame2.dim())
        throw dimension_mismatch("align_compressions: frames differ in n or k");
    const std::size_t n = frame1.ambient_dim(), k = frame1.dim();

    const auto ker = kernel_basis(hstack(frame1.iota(), neg(frame2.iota())));
    const std::size_t w = ker.cols();
    const auto c1 = complete_basis(submatrix(ker, 0, 0, k, w));
    const auto c2 = complete_basis(submatrix(ker, k, 0, k, w));
    const auto c2_inv = inverse(c2);
    auto a = mul(c1, c2_inv);
    auto a_inv = mul(c2, inverse(c1));

    AlignmentResult<F> out{a, a_inv, w, {}, true};
    for (const auto& m : ms) {
        InequalityReport r{"align", n, k};
        auto diff = sub(compress(m, frame1), mul(mul(a, compress(m, frame2)), a_inv));
        r.lhs = static_cast<long>(rank(diff));
        r.rhs = static_cast<long>(4 * (n - k));
        r.pass = r.lhs <= r.rhs;
        out.pass = out.pass && r.pass;
        out.checks.push_back(r);
    }
    return out;
}

} // namespace rsl
