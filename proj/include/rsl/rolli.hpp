#pragma once

// The free group F2 = <a, b>, its reduced words, and the almost-representation
// phi(a^{n1} b^{m1} ... a^{nk} b^{mk}) = tau(m1) ... tau(mk) built from a
// symmetric family tau : Z -> GL_n with rank(tau(k) - I) <= 1.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rsl/errors.hpp"
#include "rsl/field.hpp"
#include "rsl/linalg.hpp"
#include "rsl/matrix.hpp"
#include "rsl/random.hpp"
#include "rsl/rankmetric.hpp"

namespace rsl {

/// A generator power g^e of a free group, e != 0.
struct Syllable {
    std::size_t gen = 0;
    long exp = 0;
    friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Freely reduced word: adjacent syllables have different generators, no zero exponents.
class FreeWord {
public:
    FreeWord() = default;

    /// Reduces an arbitrary syllable list.
    explicit FreeWord(const std::vector<Syllable>& raw) {
        for (const auto& s : raw) push(s);
    }

    static FreeWord generator(std::size_t gen, long exp = 1) { return FreeWord({{gen, exp}}); }

    const std::vector<Syllable>& syllables() const { return syl_; }
    bool empty() const { return syl_.empty(); }

    std::size_t length() const {
        std::size_t n = 0;
        for (const auto& s : syl_) n += static_cast<std::size_t>(std::labs(s.exp));
        return n;
    }

    FreeWord inverse() const {
        FreeWord out;
        for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) out.syl_.push_back({it->gen, -it->exp});
        return out;
    }

    friend FreeWord operator*(const FreeWord& u, const FreeWord& v) {
        FreeWord out = u;
        for (const auto& s : v.syl_) out.push(s);
        return out;
    }

    friend bool operator==(const FreeWord&, const FreeWord&) = default;

private:
    void push(Syllable s) {
        if (s.exp == 0) return;
        if (!syl_.empty() && syl_.back().gen == s.gen) {
            syl_.back().exp += s.exp;
            if (syl_.back().exp == 0) syl_.pop_back();
            return;
        }
        syl_.push_back(s);
    }

    std::vector<Syllable> syl_;
};

/// Generator 0 is a, generator 1 is b.
inline constexpr std::size_t gen_a = 0;
inline constexpr std::size_t gen_b = 1;

/// Reduces letters over {a, A = a^-1, b, B = b^-1}; spaces are ignored.
inline FreeWord word_reduce(const std::string& letters) {
    std::vector<Syllable> raw;
    for (char c : letters) {
        switch (c) {
        case 'a': raw.push_back({gen_a, 1}); break;
        case 'A': raw.push_back({gen_a, -1}); break;
        case 'b': raw.push_back({gen_b, 1}); break;
        case 'B': raw.push_back({gen_b, -1}); break;
        case ' ': break;
        default: throw parse_error(std::string("unknown letter '") + c + "' in word");
        }
    }
    return FreeWord(raw);
}

/// The exponent list (n1, m1, ..., nk, mk) with n1 and mk possibly zero.
inline std::vector<long> alternating_exponents(const FreeWord& w) {
    std::vector<long> out;
    for (const auto& s : w.syllables()) {
        if (s.gen > gen_b) throw domain_error("alternating form is only defined on F2");
        if (out.size() % 2 != s.gen) out.push_back(0);
        out.push_back(s.exp);
    }
    if (out.size() % 2 == 1) out.push_back(0);
    return out;
}

/// Readable form such as "a b^2 a^-1"; the empty word prints as "1".
inline std::string format_word(const FreeWord& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& s : w.syllables()) {
        if (!out.empty()) out += ' ';
        out += s.gen < 26 ? std::string(1, static_cast<char>('a' + s.gen)) : "g" + std::to_string(s.gen);
        if (s.exp != 1) out += "^" + std::to_string(s.exp);
    }
    return out;
}

enum class TauPreset { DiagInvolution, Transposition, Transvection };

inline std::string preset_name(TauPreset p) {
    switch (p) {
    case TauPreset::DiagInvolution: return "diag";
    case TauPreset::Transposition: return "transposition";
    case TauPreset::Transvection: return "transvection";
    }
    return "?";
}

inline TauPreset parse_preset(const std::string& s) {
    if (s == "diag" || s == "diag_involution") return TauPreset::DiagInvolution;
    if (s == "transposition") return TauPreset::Transposition;
    if (s == "transvection") return TauPreset::Transvection;
    throw parse_error("unknown preset '" + s + "'");
}

/// tau(k) for |k| <= support_bound, the identity outside.
template <class F>
class TauFamily {
public:
    TauFamily(F field, std::size_t n, std::string tag, std::map<long, Matrix<F>> values)
        : f_(std::move(field)), n_(n), tag_(std::move(tag)), values_(std::move(values)) {
        for (const auto& [k, m] : values_) {
            if (!m.is_square() || m.rows() != n_) throw dimension_mismatch("tau values must be n x n");
            bound_ = std::max<long>(bound_, std::labs(k));
        }
    }

    const F& field() const { return f_; }
    std::size_t dim() const { return n_; }
    const std::string& tag() const { return tag_; }
    long support_bound() const { return bound_; }

    Matrix<F> operator()(long k) const {
        auto it = values_.find(k);
        return it == values_.end() ? Matrix<F>::identity(f_, n_) : it->second;
    }

    /// Integers where tau may differ from I.
    std::vector<long> support() const {
        std::vector<long> out;
        for (const auto& [k, m] : values_)
            if (!(m == Matrix<F>::identity(f_, n_))) out.push_back(k);
        return out;
    }

private:
    F f_;
    std::size_t n_ = 0;
    std::string tag_;
    long bound_ = 0;
    std::map<long, Matrix<F>> values_;
};

template <class F>
TauFamily<F> preset_tau(TauPreset kind, std::size_t n, const F& f) {
    if (n < 2) throw domain_error("tau presets need n >= 2");
    std::map<long, Matrix<F>> v;
    const long ln = static_cast<long>(n);
    switch (kind) {
    case TauPreset::DiagInvolution: {
        if (f.characteristic() == 2) throw domain_error("diag preset needs characteristic != 2");
        for (long k = 1; k <= ln; ++k) {
            auto m = Matrix<F>::generate(f, n, n, [&](std::size_t i, std::size_t j) {
                if (i != j) return f.zero();
                return static_cast<long>(i) == k - 1 ? f.neg(f.one()) : f.one();
            });
            v.emplace(k, m);
            v.emplace(-k, m);
        }
        break;
    }
    case TauPreset::Transposition:
        for (long k = 1; k < ln; ++k) {
            const std::size_t p = static_cast<std::size_t>(k - 1), q = p + 1;
            auto m = Matrix<F>::generate(f, n, n, [&](std::size_t i, std::size_t j) {
                std::size_t image = i == p ? q : (i == q ? p : i);
                return image == j ? f.one() : f.zero();
            });
            v.emplace(k, m);
            v.emplace(-k, m);
        }
        break;
    case TauPreset::Transvection:
        for (long k = 1; k < ln; ++k) {
            const std::size_t col = static_cast<std::size_t>(k - 1), row = col + 1;
            auto unit = Matrix<F>::unit(f, n, row, col);
            v.emplace(k, add(Matrix<F>::identity(f, n), unit));
            v.emplace(-k, sub(Matrix<F>::identity(f, n), unit));
        }
        break;
    }
    return TauFamily<F>(f, n, preset_name(kind), std::move(v));
}

struct TauCheck {
    bool zero_is_identity = false;
    bool symmetric = false;     // tau(-k) tau(k) = I
    bool rank_one = false;      // rank(tau(k) - I) <= 1
    bool pass() const { return zero_is_identity && symmetric && rank_one; }
};

template <class F>
TauCheck check_tau(const TauFamily<F>& tau) {
    const auto id = Matrix<F>::identity(tau.field(), tau.dim());
    TauCheck c{tau(0) == id, true, true};
    for (long k = -tau.support_bound(); k <= tau.support_bound(); ++k) {
        if (!(mul(tau(-k), tau(k)) == id)) c.symmetric = false;
        if (rank(sub(tau(k), id)) > 1) c.rank_one = false;
    }
    return c;
}

/// phi(w) = product of tau over the b-exponents of w; a-syllables contribute nothing.
template <class F>
Matrix<F> phi_eval(const FreeWord& w, const TauFamily<F>& tau) {
    Matrix<F> out = Matrix<F>::identity(tau.field(), tau.dim());
    for (const auto& s : w.syllables()) {
        if (s.gen > gen_b) throw domain_error("phi is defined on words in a and b");
        if (s.gen == gen_b) out = mul(out, tau(s.exp));
    }
    return out;
}

struct TauDefect {
    RankDistance defect;
    long arg_m = 0, arg_q = 0;
    mpq_class bound;  // 3/n
    bool pass = false;
};

namespace detail {

template <class F>
struct SparseEntry {
    std::size_t row, col;
    typename F::value_type value;
};

// Nonzero entries of tau(k) - I.
template <class F>
std::vector<SparseEntry<F>> tau_delta(const TauFamily<F>& tau, long k) {
    const F& f = tau.field();
    const auto m = tau(k);
    std::vector<SparseEntry<F>> out;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto v = i == j ? f.sub(m(i, j), f.one()) : m(i, j);
            if (!f.is_zero(v)) out.push_back({i, j, v});
        }
    return out;
}

// rank(tau(m) tau(q) - tau(m+q)) written as Dm Dq + Dm + Dq - D(m+q) with
// D = tau - I; only the rows and columns the D's touch can be nonzero.
template <class F>
std::size_t triple_rank(const F& f, const std::vector<SparseEntry<F>>& dm, const std::vector<SparseEntry<F>>& dq,
                        const std::vector<SparseEntry<F>>& dmq) {
    std::map<std::size_t, std::size_t> rows, cols;
    for (const auto* d : {&dm, &dq, &dmq})
        for (const auto& e : *d) {
            rows.emplace(e.row, 0);
            cols.emplace(e.col, 0);
        }
    std::size_t k = 0;
    for (auto& [idx, pos] : rows) pos = k++;
    k = 0;
    for (auto& [idx, pos] : cols) pos = k++;
    std::vector<typename F::value_type> a(rows.size() * cols.size(), f.zero());
    auto at = [&](std::size_t i, std::size_t j) -> typename F::value_type& {
        return a[rows.at(i) * cols.size() + cols.at(j)];
    };
    for (const auto& e : dm) at(e.row, e.col) = f.add(at(e.row, e.col), e.value);
    for (const auto& e : dq) at(e.row, e.col) = f.add(at(e.row, e.col), e.value);
    for (const auto& e : dmq) at(e.row, e.col) = f.sub(at(e.row, e.col), e.value);
    for (const auto& x : dm)
        for (const auto& y : dq)
            if (x.col == y.row) at(x.row, y.col) = f.add(at(x.row, y.col), f.mul(x.value, y.value));
    return rank(Matrix<F>(f, rows.size(), cols.size(), std::move(a)));
}

} // namespace detail

/// max over m, q of rk(tau(m) tau(q) - tau(m + q)), with m, q ranging over the
/// support, 0 and the out-of-support representatives +-(2 * bound + 1).
template <class F>
TauDefect exact_defect(const TauFamily<F>& tau) {
    std::vector<long> reps = tau.support();
    const long o = 2 * tau.support_bound() + 1;
    reps.push_back(0);
    reps.push_back(o);
    reps.push_back(-o);
    TauDefect out{RankDistance{0, tau.dim()}, 0, 0, mpq_class(3, static_cast<unsigned long>(tau.dim())), false};
    out.bound.canonicalize();
    std::map<long, std::vector<detail::SparseEntry<F>>> delta;
    auto delta_of = [&](long k) -> const std::vector<detail::SparseEntry<F>>& {
        auto it = delta.find(k);
        if (it == delta.end()) it = delta.emplace(k, detail::tau_delta(tau, k)).first;
        return it->second;
    };
    for (long m : reps)
        for (long q : reps) {
            RankDistance d{detail::triple_rank(tau.field(), delta_of(m), delta_of(q), delta_of(m + q)), tau.dim()};
            if (out.defect < d) {
                out.defect = d;
                out.arg_m = m;
                out.arg_q = q;
            }
        }
    out.pass = out.defect.value() <= out.bound;
    return out;
}

/// a b a b^2 ... a b^t.
inline FreeWord witness_word(std::size_t t) {
    if (t == 0) throw domain_error("witness word needs t >= 1");
    std::vector<Syllable> raw;
    for (std::size_t k = 1; k <= t; ++k) {
        raw.push_back({gen_a, 1});
        raw.push_back({gen_b, static_cast<long>(k)});
    }
    return FreeWord(raw);
}

/// Longest witness the preset supports: t = support bound.
template <class F>
FreeWord default_witness(const TauFamily<F>& tau) {
    return witness_word(static_cast<std::size_t>(std::max<long>(1, tau.support_bound())));
}

/// rk(phi(w) - I).
template <class F>
RankDistance witness_value(const TauFamily<F>& tau, const FreeWord& w) {
    return normalized_rank(sub(phi_eval(w, tau), Matrix<F>::identity(tau.field(), tau.dim())));
}

/// Lower bound on the distance from phi to one true representation psi of F2,
/// given by psi(a) = A, psi(b) = B. All ranks unnormalized; s = min(n, N), g = |n - N|.
///   c n - d_w s - g <= rho_w           (triangle inequality on the padded space)
///   rho_w <= dim F^N / W <= rho_a + rho_b,  W = ker(A - I) cap ker(B - I)
///   rho_a <= d_a s + r_a + g,  rho_b <= d_b s + r_b + g
/// so c n <= 6 eps0 s + r_a + r_b, giving eps0 >= (c - delta)/6 with delta = (r_a + r_b)/n.
struct RolliCertificate {
    std::size_t n = 0, big_n = 0;
    RankDistance witness;                  // c = rk(phi(w) - I_n)
    RankDistance d_a, d_b, d_w;            // flexible distances phi(x) vs psi(x)
    std::size_t rho_a = 0, rho_b = 0, rho_w = 0;  // rank(psi(x) - I_N)
    std::size_t r_a = 0, r_b = 0;          // rank(phi(x) - I_n)
    std::size_t fixed_dim = 0;             // dim W
    RankDistance eps_lower;                // max(d_a, d_b, d_w)
    mpq_class delta;                       // (r_a + r_b) / n
    mpq_class chain_bound;                 // (c - delta) / 6
    bool step_witness = false, step_kernel = false, step_generators = false, step_final = false;
    bool pass() const { return step_witness && step_kernel && step_generators && step_final; }
};

template <class F>
RolliCertificate rep_distance_certificate(const TauFamily<F>& tau, const Matrix<F>& a, const Matrix<F>& b,
                                          const FreeWord& w) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw dimension_mismatch("psi(a), psi(b) must be square of one size");
    if (!is_invertible(a) || !is_invertible(b)) throw singular_matrix();
    const F& f = tau.field();
    RolliCertificate c;
    c.n = tau.dim();
    c.big_n = a.rows();
    const std::size_t gap = c.n > c.big_n ? c.n - c.big_n : c.big_n - c.n;
    const auto idn = Matrix<F>::identity(f, c.n), id_big = Matrix<F>::identity(f, c.big_n);

    const auto phi_a = phi_eval(FreeWord::generator(gen_a), tau);
    const auto phi_b = phi_eval(FreeWord::generator(gen_b), tau);
    const auto phi_w = phi_eval(w, tau);
    // Powers are cached per letter, so the witness word costs O(t) products instead of O(t^2).
    std::map<std::pair<std::size_t, bool>, std::vector<Matrix<F>>> powers;
    auto power = [&](std::size_t gen, long e) -> const Matrix<F>& {
        auto& list = powers[{gen, e > 0}];
        if (list.empty()) {
            const auto& base = gen == gen_a ? a : b;
            list.push_back(e > 0 ? base : inverse(base));
        }
        while (static_cast<long>(list.size()) < std::labs(e)) list.push_back(mul(list.back(), list.front()));
        return list[static_cast<std::size_t>(std::labs(e)) - 1];
    };
    auto psi_w = id_big;
    for (const auto& syl : w.syllables()) psi_w = mul(psi_w, power(syl.gen, syl.exp));

    c.witness = normalized_rank(sub(phi_w, idn));
    c.d_a = flexible_distance(phi_a, a);
    c.d_b = flexible_distance(phi_b, b);
    c.d_w = flexible_distance(phi_w, psi_w);
    c.eps_lower = max_distance(max_distance(c.d_a, c.d_b), c.d_w);
    c.rho_a = rank(sub(a, id_big));
    c.rho_b = rank(sub(b, id_big));
    c.rho_w = rank(sub(psi_w, id_big));
    c.r_a = rank(sub(phi_a, idn));
    c.r_b = rank(sub(phi_b, idn));
    c.fixed_dim = c.big_n - rank(vstack(sub(a, id_big), sub(b, id_big)));

    // Flexible distances carry denominator s, so their numerators are the raw ranks.
    c.step_witness = static_cast<long>(c.witness.numerator) - static_cast<long>(c.d_w.numerator) - static_cast<long>(gap) <=
                     static_cast<long>(c.rho_w);
    c.step_kernel = c.rho_w <= c.big_n - c.fixed_dim && c.big_n - c.fixed_dim <= c.rho_a + c.rho_b;
    c.step_generators = c.rho_a <= c.d_a.numerator + c.r_a + gap && c.rho_b <= c.d_b.numerator + c.r_b + gap;
    c.delta = mpq_class(static_cast<unsigned long>(c.r_a + c.r_b), static_cast<unsigned long>(c.n));
    c.delta.canonicalize();
    c.chain_bound = (c.witness.value() - c.delta) / 6;
    c.step_final = c.eps_lower.value() >= c.chain_bound;
    return c;
}

template <class F>
RolliCertificate rep_distance_certificate(const TauFamily<F>& tau, const Matrix<F>& a, const Matrix<F>& b) {
    return rep_distance_certificate(tau, a, b, default_witness(tau));
}

/// A map from the generators of a free group Gamma onto words of F2.
class Pullback {
public:
    explicit Pullback(std::vector<FreeWord> images) : images_(std::move(images)) {
        for (const auto& w : images_)
            for (const auto& s : w.syllables())
                if (s.gen > gen_b) throw domain_error("pullback images must be words in a and b");
    }

    std::size_t rank() const { return images_.size(); }
    const std::vector<FreeWord>& images() const { return images_; }

    /// Some generator maps to a and some to b, so the map is onto F2.
    bool witnesses_surjection() const {
        bool has_a = false, has_b = false;
        for (const auto& w : images_) {
            has_a = has_a || w == FreeWord::generator(gen_a);
            has_b = has_b || w == FreeWord::generator(gen_b);
        }
        return has_a && has_b;
    }

    FreeWord substitute(const FreeWord& gamma_word) const {
        FreeWord out;
        for (const auto& s : gamma_word.syllables()) {
            if (s.gen >= images_.size()) throw domain_error("word uses a generator outside Gamma");
            const FreeWord piece = s.exp > 0 ? images_[s.gen] : images_[s.gen].inverse();
            for (long e = 0; e < std::labs(s.exp); ++e) out = out * piece;
        }
        return out;
    }

    template <class F>
    Matrix<F> evaluate(const FreeWord& gamma_word, const TauFamily<F>& tau) const {
        return phi_eval(substitute(gamma_word), tau);
    }

private:
    std::vector<FreeWord> images_;
};

/// Random freely reduced word with `length` letters over `gens` generators.
inline FreeWord random_word(Rng& rng, std::size_t gens, std::size_t length) {
    std::vector<Syllable> raw;
    for (std::size_t k = 0; k < length; ++k) raw.push_back({rng.index(gens), rng.coin() ? 1L : -1L});
    return FreeWord(raw);
}

} // namespace rsl
