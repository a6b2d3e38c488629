#pragma once

// Verma modules M(lambda) of sl_r on the PBW basis y_1^{r_1}...y_m^{r_m} v0,
// their degree-n truncations, the enveloping algebra words that act on them,
// and the central-character certificates built from the Casimir element.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rsl/errors.hpp"
#include "rsl/field.hpp"
#include "rsl/liealg.hpp"
#include "rsl/linalg.hpp"
#include "rsl/matrix.hpp"
#include "rsl/random.hpp"
#include "rsl/rankmetric.hpp"

namespace rsl {

/// Exponents over the negative root vectors y_1..y_m.
using Exponents = std::vector<unsigned>;

inline unsigned degree(const Exponents& e) {
    unsigned d = 0;
    for (auto v : e) d += v;
    return d;
}

/// Finitely supported combination of PBW monomials; zero coefficients are never stored.
template <class F>
using ModuleVector = std::map<Exponents, typename F::value_type>;

namespace detail {

template <class F>
void accumulate(const F& f, ModuleVector<F>& into, const Exponents& mon, const typename F::value_type& c) {
    if (f.is_zero(c)) return;
    auto it = into.find(mon);
    if (it == into.end()) {
        into.emplace(mon, c);
        return;
    }
    it->second = f.add(it->second, c);
    if (f.is_zero(it->second)) into.erase(it);
}

template <class F>
void accumulate(const F& f, ModuleVector<F>& into, const ModuleVector<F>& v, const typename F::value_type& c) {
    for (const auto& [mon, coeff] : v) accumulate(f, into, mon, f.mul(c, coeff));
}

} // namespace detail

/// The Verma module M(lambda); lambda[i] = lambda(h_i).
template <class F>
class VermaModule {
public:
    using value_type = typename F::value_type;

    VermaModule(ChevalleyBasis algebra, F field, std::vector<value_type> lambda)
        : g_(std::move(algebra)), f_(std::move(field)), lambda_(std::move(lambda)) {
        if (lambda_.size() != g_.rank())
            throw dimension_mismatch("weight needs " + std::to_string(g_.rank()) + " values, got " +
                                     std::to_string(lambda_.size()));
    }

    const ChevalleyBasis& algebra() const { return g_; }
    const F& field() const { return f_; }
    const std::vector<value_type>& lambda() const { return lambda_; }

    /// (lambda - sum r_a alpha_a)(h_i): the weight of a monomial on h_i.
    value_type weight(const Exponents& mon, std::size_t i) const {
        long shift = 0;
        for (std::size_t a = 0; a < mon.size(); ++a) shift += static_cast<long>(mon[a]) * g_.root_on_coroot(a, i);
        return f_.sub(lambda_[i], f_.from_int(shift));
    }

    /// Exact action of basis element `gen` on a monomial. Writing mon = y_s mon'
    /// with s the first occupied slot, gen.mon = y_s.(gen.mon') + [gen, y_s].mon'.
    const ModuleVector<F>& act(std::size_t gen, const Exponents& mon) const {
        const auto key = std::make_pair(gen, mon);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        ModuleVector<F> out = compute(gen, mon);
        return memo_.emplace(key, std::move(out)).first->second;
    }

    ModuleVector<F> act(std::size_t gen, const ModuleVector<F>& v) const {
        ModuleVector<F> out;
        for (const auto& [mon, c] : v) detail::accumulate(f_, out, act(gen, mon), c);
        return out;
    }

    /// Applies a word left-to-right as written, i.e. the rightmost letter first.
    ModuleVector<F> act_word(const std::vector<std::size_t>& word, ModuleVector<F> v) const {
        for (auto it = word.rbegin(); it != word.rend() && !v.empty(); ++it) v = act(*it, v);
        return v;
    }

    Exponents highest() const { return Exponents(g_.num_positive_roots(), 0); }

private:
    ModuleVector<F> compute(std::size_t gen, const Exponents& mon) const {
        ModuleVector<F> out;
        const auto part = g_.part(gen);
        if (part == ChevalleyBasis::Part::Cartan) {
            detail::accumulate(f_, out, mon, weight(mon, g_.local_index(gen)));
            return out;
        }
        std::size_t first = 0;
        while (first < mon.size() && mon[first] == 0) ++first;
        if (first == mon.size()) {
            // v0: x kills it, y appends.
            if (part == ChevalleyBasis::Part::Negative) {
                Exponents e = mon;
                ++e[gen];
                out.emplace(std::move(e), f_.one());
            }
            return out;
        }
        if (part == ChevalleyBasis::Part::Negative && gen <= first) {
            Exponents e = mon;
            ++e[gen];
            out.emplace(std::move(e), f_.one());
            return out;
        }
        Exponents rest = mon;
        --rest[first];
        const std::size_t ys = g_.y(first);
        ModuleVector<F> inner;
        detail::accumulate(f_, inner, act(gen, rest), f_.one());
        out = act(ys, inner);
        for (const auto& [k, c] : g_.bracket(gen, ys)) detail::accumulate(f_, out, act(k, rest), f_.from_int(c));
        return out;
    }

    ChevalleyBasis g_;
    F f_;
    std::vector<value_type> lambda_;
    mutable std::map<std::pair<std::size_t, Exponents>, ModuleVector<F>> memo_;
};

/// All exponent vectors of length m and total degree <= n, by degree then
/// lexicographically descending (so sl_2 gives 1, f, f^2, ...).
inline std::vector<Exponents> monomials_up_to(std::size_t m, unsigned n) {
    std::vector<Exponents> out;
    for (unsigned d = 0; d <= n; ++d) {
        std::vector<Exponents> level;
        Exponents cur(m, 0);
        auto rec = [&](auto&& self, std::size_t slot, unsigned left) -> void {
            if (slot + 1 == m) {
                cur[slot] = left;
                level.push_back(cur);
                return;
            }
            for (unsigned v = left + 1; v-- > 0;) {
                cur[slot] = v;
                self(self, slot + 1, left - v);
            }
        };
        rec(rec, 0, d);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

/// eps_n = 2 m^2 / n.
inline mpq_class epsilon_n(std::size_t m, std::size_t n) {
    mpq_class e(static_cast<unsigned long>(2 * m * m), static_cast<unsigned long>(n));
    e.canonicalize();
    return e;
}

/// phi_n^lambda: the compression of M(lambda) to D_n = span{monomials of degree <= n}.
template <class F>
struct VermaTruncation {
    AlmostRep<F> rep;
    std::vector<Exponents> basis;
    std::map<Exponents, std::size_t> index;
    std::vector<typename F::value_type> lambda;
    std::size_t n = 0;

    std::size_t m() const { return rep.algebra().num_positive_roots(); }
    mpq_class epsilon() const { return epsilon_n(m(), n); }
};

template <class F>
std::vector<std::string> format_weight(const F& f, const std::vector<typename F::value_type>& lambda) {
    std::vector<std::string> out;
    for (const auto& v : lambda) out.push_back(f.format(v));
    return out;
}

/// Matrices of every generator on the monomial basis of D_n; components of degree n+1 are dropped.
template <class F>
VermaTruncation<F> build_truncation(const VermaModule<F>& module, std::size_t n) {
    if (n < 2) throw domain_error("truncation degree must be >= 2");
    const auto& g = module.algebra();
    const F& f = module.field();
    auto basis = monomials_up_to(g.num_positive_roots(), static_cast<unsigned>(n));
    std::map<Exponents, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], k);
    const std::size_t dim = basis.size();

    std::vector<Matrix<F>> images;
    for (std::size_t gen = 0; gen < g.dim(); ++gen) {
        std::vector<typename F::value_type> e(dim * dim, f.zero());
        for (std::size_t col = 0; col < dim; ++col)
            for (const auto& [mon, c] : module.act(gen, basis[col])) {
                auto it = index.find(mon);
                if (it != index.end()) e[it->second * dim + col] = c;
            }
        images.emplace_back(f, dim, dim, std::move(e));
    }
    RepMetadata meta{"verma", format_weight(f, module.lambda()), n};
    return {AlmostRep<F>(g, f, std::move(images), meta), std::move(basis), std::move(index), module.lambda(), n};
}

template <class F>
VermaTruncation<F> build_truncation(const ChevalleyBasis& g, const F& f, const std::vector<typename F::value_type>& lambda,
                                    std::size_t n) {
    return build_truncation(VermaModule<F>(g, f, lambda), n);
}

struct TruncationDefectReport {
    DefectReport defect;
    mpq_class bound;  // 2 m^2 / n
    bool pass = false;
};

template <class F>
TruncationDefectReport certify_defect(const VermaTruncation<F>& t) {
    TruncationDefectReport r{pointwise_defect(t.rep), t.epsilon(), false};
    r.pass = r.defect.pointwise.value() <= r.bound;
    return r;
}

struct HighestWeightReport {
    bool cartan_diagonal = false;
    bool weights_match = false;
    bool positive_kill_v0 = false;
    bool negative_span = false;
    std::size_t span_dim = 0;
    bool pass() const { return cartan_diagonal && weights_match && positive_kill_v0 && negative_span; }
};

/// phi(h_i) diagonal with the expected weights, phi(n+) v0 = 0, and v0 generating D_n under phi(n-).
template <class F>
HighestWeightReport check_highest_weight_structure(const VermaTruncation<F>& t) {
    const auto& g = t.rep.algebra();
    const F& f = t.rep.field();
    const std::size_t dim = t.rep.dim();
    const VermaModule<F> module(g, f, t.lambda);
    HighestWeightReport r;

    r.cartan_diagonal = true;
    r.weights_match = true;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const auto& hm = t.rep.image(g.h(i));
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b)
                if (a != b && !f.is_zero(hm(a, b))) r.cartan_diagonal = false;
        for (std::size_t a = 0; a < dim; ++a)
            if (!f.eq(hm(a, a), module.weight(t.basis[a], i))) r.weights_match = false;
    }

    const std::size_t v0 = t.index.at(module.highest());
    r.positive_kill_v0 = true;
    for (std::size_t a = 0; a < g.num_positive_roots(); ++a) {
        const auto& xm = t.rep.image(g.x(a));
        for (std::size_t row = 0; row < dim; ++row)
            if (!f.is_zero(xm(row, v0))) r.positive_kill_v0 = false;
    }

    // Grow span{v0} under the phi(y_a) until it stabilizes.
    std::vector<typename F::value_type> start(dim, f.zero());
    start[v0] = f.one();
    Matrix<F> span = from_columns(f, dim, {start});
    for (;;) {
        Matrix<F> grown = span;
        for (std::size_t a = 0; a < g.num_positive_roots(); ++a) grown = hstack(grown, mul(t.rep.image(g.y(a)), span));
        grown = column_space_basis(grown);
        if (grown.cols() == span.cols()) break;
        span = grown;
    }
    r.span_dim = span.cols();
    r.negative_span = r.span_dim == dim;
    return r;
}

/// Formal linear combination of words over the Chevalley basis, read left to right.
template <class F>
class UEAElement {
public:
    using Word = std::vector<std::size_t>;
    using value_type = typename F::value_type;

    explicit UEAElement(F field) : f_(std::move(field)) {}

    void add_term(const Word& w, const value_type& c) {
        if (f_.is_zero(c)) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
            return;
        }
        it->second = f_.add(it->second, c);
        if (f_.is_zero(it->second)) terms_.erase(it);
    }
    void add_term(const Word& w, long c) { add_term(w, f_.from_int(c)); }

    void add(const UEAElement& other, const value_type& scale) {
        for (const auto& [w, c] : other.terms_) add_term(w, f_.mul(scale, c));
    }

    const std::map<Word, value_type>& terms() const { return terms_; }
    const F& field() const { return f_; }
    bool is_zero() const { return terms_.empty(); }

    std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& [w, c] : terms_) d = std::max(d, w.size());
        return d;
    }

    /// Every word is a PBW monomial (indices nondecreasing in y, h, x order).
    bool is_pbw_ordered() const {
        for (const auto& [w, c] : terms_)
            if (!std::is_sorted(w.begin(), w.end())) return false;
        return true;
    }

    /// Product u v (concatenation of words).
    friend UEAElement operator*(const UEAElement& u, const UEAElement& v) {
        UEAElement out(u.f_);
        for (const auto& [w1, c1] : u.terms_)
            for (const auto& [w2, c2] : v.terms_) {
                Word w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
                out.add_term(w, u.f_.mul(c1, c2));
            }
        return out;
    }

    friend bool operator==(const UEAElement& a, const UEAElement& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (const auto& [w, c] : a.terms_) {
            if (w != it->first || !a.f_.eq(c, it->second)) return false;
            ++it;
        }
        return true;
    }

    static UEAElement generator(const F& f, std::size_t idx) {
        UEAElement u(f);
        u.add_term(Word{idx}, f.one());
        return u;
    }

    static UEAElement unit(const F& f) {
        UEAElement u(f);
        u.add_term(Word{}, f.one());
        return u;
    }

private:
    F f_;
    std::map<Word, value_type> terms_;
};

/// Rewrites every word into PBW order using b_j b_i = b_i b_j + [b_j, b_i].
template <class F>
UEAElement<F> straighten(const ChevalleyBasis& g, const UEAElement<F>& z) {
    const F& f = z.field();
    UEAElement<F> done(f);
    std::deque<std::pair<std::vector<std::size_t>, typename F::value_type>> work(z.terms().begin(), z.terms().end());
    while (!work.empty()) {
        auto [w, c] = std::move(work.front());
        work.pop_front();
        std::size_t k = 0;
        while (k + 1 < w.size() && w[k] <= w[k + 1]) ++k;
        if (k + 1 >= w.size()) {
            done.add_term(w, c);
            continue;
        }
        auto swapped = w;
        std::swap(swapped[k], swapped[k + 1]);
        work.emplace_back(std::move(swapped), c);
        for (const auto& [idx, coeff] : g.bracket(w[k], w[k + 1])) {
            std::vector<std::size_t> shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
            shorter.push_back(idx);
            shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(k + 2), w.end());
            work.emplace_back(std::move(shorter), f.mul(c, f.from_int(coeff)));
        }
    }
    return done;
}

namespace detail {

/// r * G^{-1} for the trace-form Gram matrix G_ij = tr(h_i h_j) of sl_r (integral).
inline std::vector<std::vector<long>> scaled_inverse_gram(const ChevalleyBasis& g) {
    RationalField q;
    const std::size_t l = g.rank();
    auto gram = Matrix<RationalField>::generate(q, l, l, [&](std::size_t i, std::size_t j) {
        return mpq_class(g.cartan_matrix()[i][j]);
    });
    const auto inv = inverse(gram);
    std::vector<std::vector<long>> out(l, std::vector<long>(l));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            mpq_class v = inv(i, j) * static_cast<unsigned long>(g.r());
            if (v.get_den() != 1) throw domain_error("r * G^{-1} is not integral");
            out[i][j] = v.get_num().get_si();
        }
    return out;
}

// h_alpha for alpha = e_i - e_j is h_i + ... + h_{j-1}.
inline std::vector<std::size_t> coroot_support(const ChevalleyBasis& g, std::size_t a) {
    const auto [i, j] = g.root(a);
    std::vector<std::size_t> out;
    for (std::size_t t = i; t < j; ++t) out.push_back(g.h(t));
    return out;
}

} // namespace detail

/// Quadratic Casimir scaled by r, already in PBW order:
/// sum_ij r(G^{-1})_ij h_i h_j + r sum_a h_a + 2r sum_a y_a x_a. For sl_2: h^2 + 2h + 4fe.
template <class F>
UEAElement<F> casimir(const ChevalleyBasis& g, const F& f) {
    UEAElement<F> z(f);
    const long r = static_cast<long>(g.r());
    const auto ginv = detail::scaled_inverse_gram(g);
    for (std::size_t i = 0; i < g.rank(); ++i)
        for (std::size_t j = 0; j < g.rank(); ++j) {
            std::vector<std::size_t> w{g.h(i), g.h(j)};
            std::sort(w.begin(), w.end());
            z.add_term(w, ginv[i][j]);
        }
    for (std::size_t a = 0; a < g.num_positive_roots(); ++a) {
        for (auto hi : detail::coroot_support(g, a)) z.add_term({hi}, r);
        z.add_term({g.y(a), g.x(a)}, 2 * r);
    }
    return z;
}

/// r * sum_k b_k b^k over the trace-form dual basis, unstraightened. Straightens to casimir().
template <class F>
UEAElement<F> casimir_dual_basis(const ChevalleyBasis& g, const F& f) {
    UEAElement<F> z(f);
    const long r = static_cast<long>(g.r());
    const auto ginv = detail::scaled_inverse_gram(g);
    for (std::size_t i = 0; i < g.rank(); ++i)
        for (std::size_t j = 0; j < g.rank(); ++j) z.add_term({g.h(i), g.h(j)}, ginv[i][j]);
    for (std::size_t a = 0; a < g.num_positive_roots(); ++a) {
        z.add_term({g.x(a), g.y(a)}, r);
        z.add_term({g.y(a), g.x(a)}, r);
    }
    return z;
}

/// Sum over words of the product of generator images along the word.
template <class F>
Matrix<F> evaluate_uea(const AlmostRep<F>& phi, const UEAElement<F>& z) {
    const F& f = phi.field();
    Matrix<F> out = Matrix<F>::zero(f, phi.dim(), phi.dim());
    for (const auto& [w, c] : z.terms()) {
        Matrix<F> prod = Matrix<F>::identity(f, phi.dim());
        for (auto idx : w) prod = mul(prod, phi.image(idx));
        out = add(out, scalar_mul(c, prod));
    }
    return out;
}

/// chi_lambda(z): the coefficient of v0 in z . v0, by exact straightening in M(lambda).
template <class F>
typename F::value_type central_character_value(const VermaModule<F>& module, const UEAElement<F>& z) {
    const F& f = module.field();
    auto total = f.zero();
    for (const auto& [w, c] : z.terms()) {
        ModuleVector<F> v{{module.highest(), f.one()}};
        v = module.act_word(w, std::move(v));
        auto it = v.find(module.highest());
        if (it != v.end()) total = f.add(total, f.mul(c, it->second));
    }
    return total;
}

template <class F>
typename F::value_type central_character_value(const ChevalleyBasis& g, const F& f, const UEAElement<F>& z,
                                               const std::vector<typename F::value_type>& lambda) {
    return central_character_value(VermaModule<F>(g, f, lambda), z);
}

/// The orbit of lambda under the rho-shifted Weyl action; s_i.lambda = lambda - (lambda_i + 1) alpha_i.
template <class F>
std::vector<std::vector<typename F::value_type>> weyl_dot_orbit(const ChevalleyBasis& g, const F& f,
                                                                const std::vector<typename F::value_type>& lambda) {
    using W = std::vector<typename F::value_type>;
    const auto cartan = g.cartan_matrix();
    auto key = [&](const W& w) {
        std::vector<std::string> k;
        for (const auto& v : w) k.push_back(f.format(v));
        return k;
    };
    std::vector<W> orbit{lambda};
    std::set<std::vector<std::string>> seen{key(lambda)};
    for (std::size_t at = 0; at < orbit.size(); ++at) {
        for (std::size_t i = 0; i < g.rank(); ++i) {
            W next = orbit[at];
            const auto shift = f.add(orbit[at][i], f.one());
            for (std::size_t j = 0; j < g.rank(); ++j)
                next[j] = f.sub(next[j], f.mul(shift, f.from_int(cartan[j][i])));
            if (seen.insert(key(next)).second) orbit.push_back(std::move(next));
        }
    }
    return orbit;
}

template <class F>
bool is_weyl_linked(const ChevalleyBasis& g, const F& f, const std::vector<typename F::value_type>& lambda,
                    const std::vector<typename F::value_type>& mu) {
    for (const auto& w : weyl_dot_orbit(g, f, lambda)) {
        bool same = true;
        for (std::size_t i = 0; i < w.size(); ++i) same = same && f.eq(w[i], mu[i]);
        if (same) return true;
    }
    return false;
}

struct NearScalarReport {
    RankDistance deviation;  // rk(phi~(z) - chi I)
    std::size_t degree = 0;  // R
    mpq_class bound;         // (R + 1) eps_n
    bool pass = false;
};

template <class F>
NearScalarReport check_near_scalar(const VermaTruncation<F>& t, const UEAElement<F>& z,
                                   const typename F::value_type& chi) {
    const F& f = t.rep.field();
    const auto image = evaluate_uea(t.rep, z);
    const auto diff = sub(image, scalar_mul(chi, Matrix<F>::identity(f, t.rep.dim())));
    NearScalarReport r{normalized_rank(diff), z.degree(), 0, false};
    r.bound = t.epsilon() * static_cast<unsigned long>(r.degree + 1);
    r.pass = r.deviation.value() <= r.bound;
    return r;
}

enum class Verdict { Certified, Inconclusive, Violated };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Violated: return "violated";
    }
    return "?";
}

struct SeparationReport {
    std::string chi_lambda, chi_mu;
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
    RankDistance central_gap;   // rk(phi~^lambda(Omega) - phi~^mu(Omega))
    mpq_class required;         // 1 - 2(R+1) eps_n
    mpq_class strict_bound;     // (C(R+l, l) R)^{-1} (1 - 2(R+1) eps_n)
    bool bound_vacuous = false;
};

/// Lower bound on d^strict(phi^lambda, A phi^mu A^{-1}) for every A, from the Casimir.
template <class F>
SeparationReport separation_certificate(const VermaTruncation<F>& tl, const VermaTruncation<F>& tm) {
    if (tl.n != tm.n || tl.rep.dim() != tm.rep.dim()) throw dimension_mismatch("separation needs equal n");
    const auto& g = tl.rep.algebra();
    const F& f = tl.rep.field();
    const auto omega = casimir(g, f);
    const auto cl = central_character_value(g, f, omega, tl.lambda);
    const auto cm = central_character_value(g, f, omega, tm.lambda);
    const unsigned long big_r = omega.degree(), l = g.rank();
    const mpq_class eps = tl.epsilon();

    SeparationReport r;
    r.chi_lambda = f.format(cl);
    r.chi_mu = f.format(cm);
    r.required = 1 - 2 * (big_r + 1) * eps;
    mpq_class denom(binomial(big_r + l, l) * big_r);
    r.strict_bound = r.required / denom;
    r.bound_vacuous = r.strict_bound <= 0;
    if (f.eq(cl, cm)) {
        r.verdict = Verdict::Inconclusive;
        r.reason = "equal central characters (linked or identical weights)";
        r.central_gap = {0, tl.rep.dim()};
        return r;
    }
    r.central_gap = normalized_rank(sub(evaluate_uea(tl.rep, omega), evaluate_uea(tm.rep, omega)));
    if (r.central_gap.value() < r.required) {
        r.verdict = Verdict::Violated;
        r.reason = "central gap below 1 - 2(R+1)eps_n";
    } else {
        r.verdict = Verdict::Certified;
        r.reason = r.bound_vacuous ? "chain holds; bound vacuous at this n" : "chain holds";
    }
    return r;
}

struct RepDistanceReport {
    std::string chi_lambda;
    std::size_t target_dim = 0;       // N
    std::size_t kernel_dim = 0;       // dim of the intersection of the W_i
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
    mpq_class flex_bound;             // (C(R+l,l) R l)^{-1} (1 - l(R+m+1) eps_n)
    bool bound_vacuous = false;
    MapDistance basis_flexible;       // basis max of d^flex and dim(g) times it
};

/// Lower bound on d^flex(phi_n^lambda, psi) for a true representation psi,
/// certified by W = ker(psi~(Omega) - chi_lambda(Omega) I_N) = 0.
template <class F>
RepDistanceReport rep_distance_certificate(const VermaTruncation<F>& t, const AlmostRep<F>& psi) {
    const auto& g = t.rep.algebra();
    const F& f = t.rep.field();
    if (!(psi.algebra() == g)) throw dimension_mismatch("rep_distance: different Lie algebras");
    const std::size_t k = t.rep.dim(), big_n = psi.dim();
    const mpq_class eps = t.epsilon();
    const mpq_class max_n = (1 + eps * static_cast<unsigned long>(g.dim())) * static_cast<unsigned long>(k);
    if (big_n < k || mpq_class(static_cast<unsigned long>(big_n)) > max_n)
        throw domain_error("rep_distance: N = " + std::to_string(big_n) + " outside [k_n, (1 + eps_n dim g) k_n]");

    const auto omega = casimir(g, f);
    const auto chi = central_character_value(g, f, omega, t.lambda);
    const unsigned long big_r = omega.degree(), l = g.rank(), m = g.num_positive_roots();

    RepDistanceReport r;
    r.chi_lambda = f.format(chi);
    r.target_dim = big_n;
    const auto shifted = sub(evaluate_uea(psi, omega), scalar_mul(chi, Matrix<F>::identity(f, big_n)));
    r.kernel_dim = big_n - rank(shifted);
    mpq_class denom(binomial(big_r + l, l) * big_r * l);
    r.flex_bound = (1 - l * (big_r + m + 1) * eps) / denom;
    r.bound_vacuous = r.flex_bound <= 0;
    r.basis_flexible = map_distance(t.rep, psi, DistanceMode::Flexible);
    if (r.kernel_dim != 0) {
        r.verdict = Verdict::Inconclusive;
        r.reason = "psi has a summand with central character chi_lambda";
        return r;
    }
    if (r.basis_flexible.uniform_bound < r.flex_bound) {
        r.verdict = Verdict::Violated;
        r.reason = "dim(g) * basis-max flexible distance below the bound";
    } else {
        r.verdict = Verdict::Certified;
        r.reason = r.bound_vacuous ? "W = 0; bound vacuous at this n, increase n" : "W = 0";
    }
    return r;
}

/// Ten sl_2 highest-weight lists whose irreducibles have total dimension k,
/// used as a fixed battery of true representations of dimension k (k >= 6).
inline std::vector<std::vector<std::size_t>> partition_battery(std::size_t k) {
    if (k < 6) throw domain_error("partition battery needs k >= 6");
    std::vector<std::vector<std::size_t>> out;
    auto copies = [&](std::size_t d) {
        std::vector<std::size_t> p(k / (d + 1), d);
        p.resize(p.size() + k % (d + 1), 0);
        return p;
    };
    out.push_back({k - 1});
    out.push_back(std::vector<std::size_t>(k, 0));
    out.push_back({k - 2, 0});
    out.push_back({k / 2 - 1, k - k / 2 - 1});
    out.push_back(copies(1));
    out.push_back(copies(2));
    out.push_back({k - 4, 2});
    std::vector<std::size_t> stair;
    std::size_t left = k;
    for (std::size_t d = 0; d + 1 <= left; ++d) {
        stair.push_back(d);
        left -= d + 1;
    }
    stair.resize(stair.size() + left, 0);
    out.push_back(stair);
    out.push_back({1, k - 3});
    out.push_back(copies(3));
    return out;
}

/// The Weyl twist h -> -h, e -> -f, f -> -e composed with phi (sl_2 only).
template <class F>
AlmostRep<F> weyl_twist(const AlmostRep<F>& phi) {
    if (phi.algebra().r() != 2) throw domain_error("weyl_twist is defined for sl2 only");
    RepMetadata meta = phi.metadata();
    meta.construction += "+weyl_twist";
    return AlmostRep<F>(phi.algebra(), phi.field(), {neg(phi.image(2)), neg(phi.image(1)), neg(phi.image(0))}, meta);
}

struct TwistSample {
    std::string conjugator;
    RankDistance distance;  // basis max of d^flex(phi, A twist A^{-1})
};

struct WeylTwistReport {
    std::vector<TwistSample> samples;
    RankDistance minimum;
};

/// Empirical distances between phi and conjugates of its twist: identity,
/// the order-reversing permutation, and `trials` random invertibles. No bound is claimed.
template <class F>
WeylTwistReport weyl_twist_report(const AlmostRep<F>& phi, std::size_t trials, std::uint64_t seed) {
    const F& f = phi.field();
    const std::size_t n = phi.dim();
    const auto twisted = weyl_twist(phi);
    WeylTwistReport report;
    auto record = [&](std::string name, const Matrix<F>& a, const Matrix<F>& a_inv) {
        const auto d = map_distance(phi, conjugate(twisted, a, a_inv), DistanceMode::Flexible).basis_max;
        if (report.samples.empty() || d < report.minimum) report.minimum = d;
        report.samples.push_back({std::move(name), d});
    };
    const auto id = Matrix<F>::identity(f, n);
    record("identity", id, id);
    const auto rev = Matrix<F>::generate(f, n, n, [&](std::size_t i, std::size_t j) {
        return i + j + 1 == n ? f.one() : f.zero();
    });
    record("reversal", rev, rev);
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto a = random_invertible(f, rng, n);
        record("random" + std::to_string(t), a, inverse(a));
    }
    return report;
}

} // namespace rsl
