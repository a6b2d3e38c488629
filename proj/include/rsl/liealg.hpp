#pragma once

// sl_r in its Chevalley basis, realized by elementary matrices, and linear
// maps from that basis into matrices (almost-representations).
//
// Basis order: y_1..y_m (E_ji), h_1..h_l (E_ii - E_{i+1,i+1}), x_1..x_m (E_ij),
// positive roots e_i - e_j (i < j) sorted by (height, leftmost simple root).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rsl/errors.hpp"
#include "rsl/field.hpp"
#include "rsl/linalg.hpp"
#include "rsl/matrix.hpp"
#include "rsl/random.hpp"
#include "rsl/rankmetric.hpp"

namespace rsl {

/// Sparse coordinate vector with integer coefficients: (basis index, coefficient).
using IntCombination = std::vector<std::pair<std::size_t, long>>;

class ChevalleyBasis {
public:
    enum class Part { Negative, Cartan, Positive };

    explicit ChevalleyBasis(std::size_t r) : r_(r) {
        if (r < 2) throw domain_error("sl_r needs r >= 2");
        for (std::size_t height = 1; height < r; ++height)
            for (std::size_t i = 0; i + height < r; ++i) roots_.emplace_back(i, i + height);
        build_structure_constants();
    }

    std::size_t r() const { return r_; }
    std::size_t num_positive_roots() const { return roots_.size(); }  // m
    std::size_t rank() const { return r_ - 1; }                       // l
    std::size_t dim() const { return 2 * roots_.size() + rank(); }
    std::string name() const { return "sl" + std::to_string(r_); }

    std::size_t y(std::size_t a) const { return a; }
    std::size_t h(std::size_t i) const { return roots_.size() + i; }
    std::size_t x(std::size_t a) const { return roots_.size() + rank() + a; }

    Part part(std::size_t idx) const {
        if (idx < roots_.size()) return Part::Negative;
        if (idx < roots_.size() + rank()) return Part::Cartan;
        return Part::Positive;
    }
    /// Root index of a y/x element, or Cartan index of an h element.
    std::size_t local_index(std::size_t idx) const {
        switch (part(idx)) {
        case Part::Negative: return idx;
        case Part::Cartan: return idx - roots_.size();
        case Part::Positive: return idx - roots_.size() - rank();
        }
        return 0;
    }

    /// Positive root a as the pair (i, j), i < j: the root e_i - e_j.
    std::pair<std::size_t, std::size_t> root(std::size_t a) const { return roots_[a]; }

    /// alpha_a(h_i).
    long root_on_coroot(std::size_t a, std::size_t i) const {
        const auto [p, q] = roots_[a];
        auto coord = [&](std::size_t t) -> long { return (t == i ? 1 : 0) - (t == i + 1 ? 1 : 0); };
        return coord(p) - coord(q);
    }

    /// Weight of a basis element on h_i (y: -alpha, h: 0, x: +alpha).
    long weight_on_coroot(std::size_t idx, std::size_t i) const {
        switch (part(idx)) {
        case Part::Negative: return -root_on_coroot(idx, i);
        case Part::Cartan: return 0;
        case Part::Positive: return root_on_coroot(local_index(idx), i);
        }
        return 0;
    }

    /// Cartan matrix A with A[i][j] = alpha_j(h_i) over the simple roots.
    std::vector<std::vector<long>> cartan_matrix() const {
        std::vector<std::vector<long>> a(rank(), std::vector<long>(rank()));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) a[i][j] = root_on_coroot(simple_root(j), i);
        return a;
    }

    /// Index among positive roots of the simple root alpha_i = e_i - e_{i+1}.
    std::size_t simple_root(std::size_t i) const { return i; }

    std::string element_name(std::size_t idx) const {
        if (r_ == 2) {
            static const char* names[] = {"f", "h", "e"};
            return names[idx];
        }
        switch (part(idx)) {
        case Part::Negative: return "y" + std::to_string(idx + 1);
        case Part::Cartan: return "h" + std::to_string(local_index(idx) + 1);
        case Part::Positive: return "x" + std::to_string(local_index(idx) + 1);
        }
        return "?";
    }

    /// Integer r x r realization of a basis element as (row, col, value) triples.
    std::vector<std::tuple<std::size_t, std::size_t, long>> realization(std::size_t idx) const {
        switch (part(idx)) {
        case Part::Negative: {
            const auto [i, j] = roots_[idx];
            return {{j, i, 1}};
        }
        case Part::Cartan: {
            const std::size_t i = local_index(idx);
            return {{i, i, 1}, {i + 1, i + 1, -1}};
        }
        case Part::Positive: {
            const auto [i, j] = roots_[local_index(idx)];
            return {{i, j, 1}};
        }
        }
        return {};
    }

    template <class F>
    Matrix<F> element_matrix(const F& f, std::size_t idx) const {
        std::vector<typename F::value_type> e(r_ * r_, f.zero());
        for (const auto& [i, j, v] : realization(idx)) e[i * r_ + j] = f.from_int(v);
        return Matrix<F>(f, r_, r_, std::move(e));
    }

    /// Coordinates of a trace-zero r x r matrix, read off its entries.
    template <class F>
    std::vector<typename F::value_type> coordinates(const Matrix<F>& m) const {
        const F& f = m.field();
        if (m.rows() != r_ || m.cols() != r_) throw dimension_mismatch("coordinates: matrix is not r x r");
        auto trace = f.zero();
        for (std::size_t i = 0; i < r_; ++i) trace = f.add(trace, m(i, i));
        if (!f.is_zero(trace)) throw domain_error("matrix has nonzero trace, not in " + name());
        std::vector<typename F::value_type> c(dim(), f.zero());
        for (std::size_t a = 0; a < roots_.size(); ++a) {
            const auto [i, j] = roots_[a];
            c[y(a)] = m(j, i);
            c[x(a)] = m(i, j);
        }
        auto partial = f.zero();
        for (std::size_t i = 0; i < rank(); ++i) {
            partial = f.add(partial, m(i, i));
            c[h(i)] = partial;
        }
        return c;
    }

    template <class F>
    Matrix<F> matrix_of(const F& f, const std::vector<typename F::value_type>& coords) const {
        if (coords.size() != dim()) throw dimension_mismatch("coordinate vector length");
        Matrix<F> out = Matrix<F>::zero(f, r_, r_);
        for (std::size_t k = 0; k < dim(); ++k)
            if (!f.is_zero(coords[k])) out = add(out, scalar_mul(coords[k], element_matrix(f, k)));
        return out;
    }

    /// Structure constants: [z_i, z_j] = sum_k c_ij^k z_k.
    const IntCombination& bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

    /// [a, b] in coordinates.
    template <class F>
    std::vector<typename F::value_type> bracket_coords(const F& f, const std::vector<typename F::value_type>& a,
                                                      const std::vector<typename F::value_type>& b) const {
        if (a.size() != dim() || b.size() != dim()) throw dimension_mismatch("bracket_coords: coordinate length");
        std::vector<typename F::value_type> out(dim(), f.zero());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (f.is_zero(a[i])) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (f.is_zero(b[j])) continue;
                const auto ab = f.mul(a[i], b[j]);
                for (const auto& [k, c] : bracket(i, j)) out[k] = f.add(out[k], f.mul(ab, f.from_int(c)));
            }
        }
        return out;
    }

    /// [a, b] computed by commuting realization matrices; an independent route to bracket_coords.
    template <class F>
    std::vector<typename F::value_type> bracket_via_matrices(const Matrix<F>& a, const Matrix<F>& b) const {
        return coordinates(commutator(a, b));
    }

    friend bool operator==(const ChevalleyBasis& a, const ChevalleyBasis& b) { return a.r_ == b.r_; }

private:
    void build_structure_constants() {
        const std::size_t d = dim();
        table_.assign(d * d, {});
        RationalField q;
        std::vector<Matrix<RationalField>> mats;
        for (std::size_t k = 0; k < d; ++k) mats.push_back(element_matrix(q, k));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const auto c = coordinates(commutator(mats[i], mats[j]));
                for (std::size_t k = 0; k < d; ++k)
                    if (sgn(c[k]) != 0) table_[i * d + j].emplace_back(k, c[k].get_num().get_si());
            }
    }

    std::size_t r_;
    std::vector<std::pair<std::size_t, std::size_t>> roots_;
    std::vector<IntCombination> table_;
};

/// Provenance of an AlmostRep.
struct RepMetadata {
    std::string construction;          // "verma", "irreducible", "direct_sum", "adjoint", ...
    std::vector<std::string> lambda;   // weight values as exact strings, if any
    std::optional<std::size_t> n;      // truncation degree, if any
};

/// A linear map from the Chevalley basis of sl_r into dim x dim matrices.
template <class F>
class AlmostRep {
public:
    AlmostRep(ChevalleyBasis algebra, F field, std::vector<Matrix<F>> images, RepMetadata meta = {})
        : algebra_(std::move(algebra)), field_(std::move(field)), images_(std::move(images)), meta_(std::move(meta)) {
        if (images_.size() != algebra_.dim())
            throw dimension_mismatch("AlmostRep needs " + std::to_string(algebra_.dim()) + " images, got " +
                                     std::to_string(images_.size()));
        dim_ = images_.front().rows();
        for (const auto& m : images_)
            if (!m.is_square() || m.rows() != dim_) throw dimension_mismatch("AlmostRep images differ in dimension");
    }

    const ChevalleyBasis& algebra() const { return algebra_; }
    const F& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const Matrix<F>& image(std::size_t idx) const { return images_.at(idx); }
    const std::vector<Matrix<F>>& images() const { return images_; }
    const RepMetadata& metadata() const { return meta_; }

    /// phi(sum c_k z_k) = sum c_k phi(z_k).
    Matrix<F> apply(const std::vector<typename F::value_type>& coords) const {
        if (coords.size() != images_.size()) throw dimension_mismatch("apply: coordinate length");
        Matrix<F> out = Matrix<F>::zero(field_, dim_, dim_);
        for (std::size_t k = 0; k < coords.size(); ++k)
            if (!field_.is_zero(coords[k])) out = add(out, scalar_mul(coords[k], images_[k]));
        return out;
    }

    Matrix<F> apply_combination(const IntCombination& comb) const {
        Matrix<F> out = Matrix<F>::zero(field_, dim_, dim_);
        for (const auto& [k, c] : comb) out = add(out, scalar_mul(field_.from_int(c), images_[k]));
        return out;
    }

private:
    ChevalleyBasis algebra_;
    F field_;
    std::size_t dim_ = 0;
    std::vector<Matrix<F>> images_;
    RepMetadata meta_;
};

/// [phi(z_i), phi(z_j)] - phi([z_i, z_j]).
template <class F>
Matrix<F> bracket_defect_matrix(const AlmostRep<F>& phi, std::size_t i, std::size_t j) {
    return sub(commutator(phi.image(i), phi.image(j)), phi.apply_combination(phi.algebra().bracket(i, j)));
}

struct DefectReport {
    RankDistance pointwise;        // max over basis pairs
    std::size_t arg_i = 0, arg_j = 0;
    mpq_class uniform_bound;       // (dim g)^2 * pointwise
};

/// Exact pointwise defect over all basis pairs (i < j suffices by antisymmetry).
template <class F>
DefectReport pointwise_defect(const AlmostRep<F>& phi) {
    const std::size_t d = phi.algebra().dim();
    DefectReport out{RankDistance{0, phi.dim()}, 0, 0, 0};
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            RankDistance r = normalized_rank(bracket_defect_matrix(phi, i, j));
            if (out.pointwise < r) {
                out.pointwise = r;
                out.arg_i = i;
                out.arg_j = j;
            }
        }
    out.uniform_bound = out.pointwise.value() * static_cast<unsigned long>(d * d);
    return out;
}

/// Max over `trials` random pairs x, y of rk([phi(x), phi(y)] - phi([x, y])).
template <class F>
RankDistance sampled_defect(const AlmostRep<F>& phi, std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    const auto& g = phi.algebra();
    const F& f = phi.field();
    RankDistance best{0, phi.dim()};
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<typename F::value_type> x, y;
        for (std::size_t k = 0; k < g.dim(); ++k) x.push_back(random_scalar(f, rng));
        for (std::size_t k = 0; k < g.dim(); ++k) y.push_back(random_scalar(f, rng));
        auto d = sub(commutator(phi.apply(x), phi.apply(y)), phi.apply(g.bracket_coords(f, x, y)));
        best = max_distance(best, normalized_rank(d));
    }
    return best;
}

/// Basis maximum of the strict or flexible distance; the sup over g is at most dim(g) times it.
template <class F>
MapDistance map_distance(const AlmostRep<F>& phi, const AlmostRep<F>& psi, DistanceMode mode) {
    if (!(phi.algebra() == psi.algebra())) throw dimension_mismatch("map_distance: different Lie algebras");
    MapDistance out{RankDistance{0, std::min(phi.dim(), psi.dim())}, 0, 0};
    for (std::size_t k = 0; k < phi.algebra().dim(); ++k) {
        RankDistance d = mode == DistanceMode::Strict ? strict_distance(phi.image(k), psi.image(k))
                                                      : flexible_distance(phi.image(k), psi.image(k));
        if (out.basis_max < d) {
            out.basis_max = d;
            out.argmax = k;
        }
    }
    out.uniform_bound = out.basis_max.value() * static_cast<unsigned long>(phi.algebra().dim());
    return out;
}

/// The same images read over Q(i): phi~(x + iy) = phi(x) + i phi(y).
inline AlmostRep<GaussianField> complexify(const AlmostRep<RationalField>& phi) {
    GaussianField c;
    std::vector<Matrix<GaussianField>> images;
    for (const auto& m : phi.images())
        images.push_back(map_entries(c, m, [&](const mpq_class& q) { return c.from_rational(q); }));
    RepMetadata meta = phi.metadata();
    meta.construction += "+complexified";
    return AlmostRep<GaussianField>(phi.algebra(), c, std::move(images), meta);
}

/// The (d+1)-dimensional irreducible sl_2 module L(d) on v_k = f^k v_0:
/// h v_k = (d - 2k) v_k, f v_k = v_{k+1}, e v_k = k(d - k + 1) v_{k-1}.
template <class F>
AlmostRep<F> irreducible_sl2(const F& f, std::size_t d) {
    const std::size_t n = d + 1;
    const long dl = static_cast<long>(d);
    auto fm = Matrix<F>::generate(f, n, n, [&](std::size_t i, std::size_t j) { return i == j + 1 ? f.one() : f.zero(); });
    auto hm = Matrix<F>::generate(f, n, n, [&](std::size_t i, std::size_t j) {
        return i == j ? f.from_int(dl - 2 * static_cast<long>(i)) : f.zero();
    });
    auto em = Matrix<F>::generate(f, n, n, [&](std::size_t i, std::size_t j) {
        const long k = static_cast<long>(j);
        return j == i + 1 ? f.from_int(k * (dl - k + 1)) : f.zero();
    });
    return AlmostRep<F>(ChevalleyBasis(2), f, {fm, hm, em}, {"irreducible", {std::to_string(d)}, std::nullopt});
}

/// Block-diagonal sum of L(d_i).
template <class F>
AlmostRep<F> direct_sum_rep(const F& f, const std::vector<std::size_t>& highest_weights) {
    if (highest_weights.empty()) throw domain_error("direct_sum_rep needs at least one summand");
    std::vector<Matrix<F>> images = irreducible_sl2(f, highest_weights.front()).images();
    for (std::size_t s = 1; s < highest_weights.size(); ++s) {
        const auto next = irreducible_sl2(f, highest_weights[s]);
        for (std::size_t k = 0; k < 3; ++k) images[k] = direct_sum(images[k], next.image(k));
    }
    RepMetadata meta{"direct_sum", {}, std::nullopt};
    for (auto d : highest_weights) meta.lambda.push_back(std::to_string(d));
    return AlmostRep<F>(ChevalleyBasis(2), f, std::move(images), meta);
}

/// ad(z_k) on the basis, from the structure constants.
template <class F>
AlmostRep<F> adjoint_rep(const F& f, const ChevalleyBasis& g) {
    const std::size_t d = g.dim();
    std::vector<Matrix<F>> images;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<typename F::value_type> e(d * d, f.zero());
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& [i, c] : g.bracket(k, j)) e[i * d + j] = f.from_int(c);
        images.emplace_back(f, d, d, std::move(e));
    }
    return AlmostRep<F>(g, f, std::move(images), {"adjoint", {}, std::nullopt});
}

/// The defining representation z -> its r x r realization.
template <class F>
AlmostRep<F> defining_rep(const F& f, const ChevalleyBasis& g) {
    std::vector<Matrix<F>> images;
    for (std::size_t k = 0; k < g.dim(); ++k) images.push_back(g.element_matrix(f, k));
    return AlmostRep<F>(g, f, std::move(images), {"defining", {}, std::nullopt});
}

/// Solves J phi(z) = psi(z) J for all basis z; returns an invertible solution
/// if one lies in the span of the kernel basis vectors tried (a single vector
/// when the modules are irreducible).
template <class F>
std::optional<Matrix<F>> intertwiner(const AlmostRep<F>& phi, const AlmostRep<F>& psi) {
    if (phi.dim() != psi.dim()) return std::nullopt;
    const F& f = phi.field();
    const std::size_t n = phi.dim();
    const std::size_t unknowns = n * n;
    std::vector<typename F::value_type> rows;
    std::size_t row_count = 0;
    // (J A - B J)_{ij} = sum_k J_ik A_kj - sum_k B_ik J_kj
    for (std::size_t z = 0; z < phi.algebra().dim(); ++z) {
        const auto& a = phi.image(z);
        const auto& b = psi.image(z);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<typename F::value_type> row(unknowns, f.zero());
                for (std::size_t k = 0; k < n; ++k) {
                    row[i * n + k] = f.add(row[i * n + k], a(k, j));
                    row[k * n + j] = f.sub(row[k * n + j], b(i, k));
                }
                rows.insert(rows.end(), row.begin(), row.end());
                ++row_count;
            }
    }
    const auto ker = kernel_basis(Matrix<F>(f, row_count, unknowns, std::move(rows)));
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        auto j = Matrix<F>::generate(f, n, n, [&](std::size_t r, std::size_t s) { return ker(r * n + s, c); });
        if (is_invertible(j)) return j;
    }
    return std::nullopt;
}

/// A phi(.) A^{-1}.
template <class F>
AlmostRep<F> conjugate(const AlmostRep<F>& phi, const Matrix<F>& a, const Matrix<F>& a_inv) {
    std::vector<Matrix<F>> images;
    for (const auto& m : phi.images()) images.push_back(mul(mul(a, m), a_inv));
    return AlmostRep<F>(phi.algebra(), phi.field(), std::move(images), phi.metadata());
}

} // namespace rsl
