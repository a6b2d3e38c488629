// rsl_cli: command-line front end for the rank-metric stability library.
//
// Every command prints one JSON report with sorted keys (or JSON lines with
// --format jsonl, or CSV with --format csv). The only run-dependent field is
// "timing"; --no-timing drops it so two runs compare byte for byte.
// Exit codes: 0 all checks pass, 1 internal error, 2 usage or input error,
// 3 a claimed bound was violated (a diagnostic goes to stderr).

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rsl/rsl.hpp"
#include "rsl/serialize.hpp"

using namespace rsl;

namespace {

struct Options {
    std::string field = "rational";
    std::string algebra = "sl2";
    std::string lambda = "1/2";
    std::string mu;
    std::vector<std::size_t> n;
    std::string preset = "diag";
    std::uint64_t seed = 1;
    std::size_t trials = 0;
    std::size_t k = 0;
    std::size_t big_n = 0;
    std::string family = "trivial";
    std::vector<std::string> partitions;
    std::string rep_in, rep_out;
    std::string a_file, b_file;
    std::vector<std::string> images;
    std::size_t length = 8;
    std::size_t t = 0;
    bool structure = false;
    std::string matrix;
    std::string config;
    std::string format = "json";
    std::string out, csv;
    bool no_timing = false;
};

struct CsvRow {
    std::string n, dim, defect, bound, pass;
};

struct Outcome {
    json report;
    json records = json::array();
    std::vector<CsvRow> csv;
    bool violated = false;
    std::string diagnostic;
    std::string format = "json";
    std::string out, csv_path;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::size_t thread_count(std::size_t jobs) {
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RSL_THREADS")) {
        try {
            threads = std::max<std::size_t>(1, std::stoul(env));
        } catch (const std::logic_error&) {
            throw parse_error(std::string("RSL_THREADS must be a positive integer, got '") + env + "'");
        }
    }
    return std::min(threads, std::max<std::size_t>(1, jobs));
}

// Runs fn(0..count-1) on up to RSL_THREADS workers. Results are written by
// index, so output order never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t threads = thread_count(count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

template <class Fn>
auto with_field(const std::string& tag, Fn&& fn) {
    const auto spec = FieldSpec::parse(tag);
    switch (spec.kind) {
    case FieldKind::Rational: return fn(RationalField{});
    case FieldKind::GaussianRational: return fn(GaussianField{});
    case FieldKind::PrimeField: break;
    }
    return fn(PrimeField(spec.p));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

template <class F>
std::vector<typename F::value_type> parse_weight(const F& f, const ChevalleyBasis& g, const std::string& text) {
    std::vector<typename F::value_type> w;
    for (const auto& part : split(text, ',')) w.push_back(f.parse(part));
    if (w.size() != g.rank())
        throw parse_error("weight '" + text + "' has " + std::to_string(w.size()) + " entries, " + g.name() +
                          " needs " + std::to_string(g.rank()));
    return w;
}

std::vector<std::size_t> parse_partition(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& part : split(text, ',')) {
        try {
            out.push_back(std::stoul(part));
        } catch (const std::logic_error&) {
            throw parse_error("bad partition entry '" + part + "'");
        }
    }
    if (out.empty()) throw parse_error("empty partition");
    return out;
}

template <class F>
Matrix<F> read_matrix_file(const std::string& path, const F& f) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    return read_text(in, f);
}

std::size_t single_n(const Options& o) {
    if (o.n.size() != 1) throw parse_error("this command takes exactly one --n");
    return o.n.front();
}

// ---- verma ---------------------------------------------------------------

template <class F>
void verma_build(const F& f, const Options& o, Outcome& out) {
    ChevalleyBasis g(algebra_rank_from_name(o.algebra));
    const auto t = build_truncation(g, f, parse_weight(f, g, o.lambda), single_n(o));
    const auto cd = certify_defect(t);
    json rec = {{"n", t.n}, {"dim", t.rep.dim()}, {"defect", to_json(cd.defect)}, {"bound", to_json(cd.bound)},
                {"pass", cd.pass}};
    if (o.structure) rec["structure"] = check_highest_weight_structure(t).pass();
    out.records.push_back(rec);
    out.violated = !cd.pass;
    if (!o.rep_out.empty()) {
        std::ofstream os(o.rep_out);
        if (!os) throw parse_error("cannot write '" + o.rep_out + "'");
        write_rep(os, t.rep);
    }
}

template <class F>
void verma_defect(const F& f, const Options& o, Outcome& out) {
    ChevalleyBasis g(algebra_rank_from_name(o.algebra));
    const auto lambda = parse_weight(f, g, o.lambda);
    std::vector<json> recs(o.n.size());
    std::vector<CsvRow> rows(o.n.size());
    std::vector<std::string> diags(o.n.size());
    parallel_for(o.n.size(), [&](std::size_t i) {
        const auto t = build_truncation(g, f, lambda, o.n[i]);
        const auto cd = certify_defect(t);
        json rec = {{"n", t.n},
                    {"dim", t.rep.dim()},
                    {"defect", cd.defect.pointwise.str()},
                    {"pair", {g.element_name(cd.defect.arg_i), g.element_name(cd.defect.arg_j)}},
                    {"uniform_bound", to_json(cd.defect.uniform_bound)},
                    {"bound", to_json(cd.bound)},
                    {"pass", cd.pass}};
        if (o.structure) {
            const bool ok = check_highest_weight_structure(t).pass();
            rec["structure"] = ok;
            if (!ok) diags[i] += "n=" + std::to_string(t.n) + ": highest-weight structure check failed\n";
        }
        recs[i] = rec;
        rows[i] = {std::to_string(t.n), std::to_string(t.rep.dim()), cd.defect.pointwise.str(), cd.bound.get_str(),
                   bool_str(cd.pass)};
        if (!cd.pass) {
            const auto& a = t.rep.image(cd.defect.arg_i);
            const auto& b = t.rep.image(cd.defect.arg_j);
            diags[i] += "n=" + std::to_string(t.n) + ": defect " + cd.defect.pointwise.str() + " > " +
                        cd.bound.get_str() + " at (" + g.element_name(cd.defect.arg_i) + ", " +
                        g.element_name(cd.defect.arg_j) + ")\n";
            if (t.rep.dim() <= 24) diags[i] += "phi(a) =\n" + to_text(a) + "phi(b) =\n" + to_text(b);
        }
    });
    for (std::size_t i = 0; i < recs.size(); ++i) {
        out.records.push_back(recs[i]);
        out.csv.push_back(rows[i]);
        out.diagnostic += diags[i];
        if (recs[i]["pass"] == false || recs[i].value("structure", true) == false) out.violated = true;
    }
}

template <class F>
void verma_casimir(const F& f, const Options& o, Outcome& out) {
    ChevalleyBasis g(algebra_rank_from_name(o.algebra));
    const auto lambda = parse_weight(f, g, o.lambda);
    const auto omega = casimir(g, f);
    const auto chi = central_character_value(g, f, omega, lambda);
    std::vector<json> recs(o.n.size());
    std::vector<CsvRow> rows(o.n.size());
    parallel_for(o.n.size(), [&](std::size_t i) {
        const auto t = build_truncation(g, f, lambda, o.n[i]);
        const auto r = check_near_scalar(t, omega, chi);
        recs[i] = {{"n", t.n},
                   {"dim", t.rep.dim()},
                   {"chi", f.format(chi)},
                   {"deviation", to_json(r.deviation)},
                   {"degree", r.degree},
                   {"bound", to_json(r.bound)},
                   {"pass", r.pass}};
        rows[i] = {std::to_string(t.n), std::to_string(t.rep.dim()), r.deviation.str(), r.bound.get_str(),
                   bool_str(r.pass)};
    });
    for (std::size_t i = 0; i < recs.size(); ++i) {
        out.records.push_back(recs[i]);
        out.csv.push_back(rows[i]);
        if (recs[i]["pass"] == false) {
            out.violated = true;
            out.diagnostic += "n=" + rows[i].n + ": rank(phi(Omega) - chi I) normalized " + rows[i].defect +
                              " exceeds " + rows[i].bound + "\n";
        }
    }
    out.report["summary"] = {{"chi", f.format(chi)}, {"casimir_terms", omega.terms().size()}};
}

template <class F>
void verma_separate(const F& f, const Options& o, Outcome& out) {
    if (o.mu.empty()) throw parse_error("separate needs --mu");
    ChevalleyBasis g(algebra_rank_from_name(o.algebra));
    const auto lambda = parse_weight(f, g, o.lambda), mu = parse_weight(f, g, o.mu);
    std::vector<json> recs(o.n.size());
    std::vector<CsvRow> rows(o.n.size());
    std::vector<bool> bad(o.n.size(), false);
    parallel_for(o.n.size(), [&](std::size_t i) {
        const auto tl = build_truncation(g, f, lambda, o.n[i]);
        const auto tm = build_truncation(g, f, mu, o.n[i]);
        const auto r = separation_certificate(tl, tm);
        recs[i] = {{"n", tl.n},
                   {"dim", tl.rep.dim()},
                   {"chi_lambda", r.chi_lambda},
                   {"chi_mu", r.chi_mu},
                   {"linked", is_weyl_linked(g, f, lambda, mu)},
                   {"central_gap", to_json(r.central_gap)},
                   {"required", to_json(r.required)},
                   {"strict_bound", to_json(r.strict_bound)},
                   {"bound_vacuous", r.bound_vacuous},
                   {"verdict", verdict_name(r.verdict)},
                   {"reason", r.reason}};
        rows[i] = {std::to_string(tl.n), std::to_string(tl.rep.dim()), r.central_gap.str(), r.strict_bound.get_str(),
                   bool_str(r.verdict == Verdict::Certified)};
        bad[i] = r.verdict == Verdict::Violated;
    });
    for (std::size_t i = 0; i < recs.size(); ++i) {
        out.records.push_back(recs[i]);
        out.csv.push_back(rows[i]);
        if (bad[i]) {
            out.violated = true;
            out.diagnostic += "n=" + rows[i].n + ": central gap " + rows[i].defect + " below " +
                              recs[i]["required"].get<std::string>() + "\n";
        }
    }
}

template <class F>
void verma_repdist(const F& f, const Options& o, Outcome& out) {
    ChevalleyBasis g(algebra_rank_from_name(o.algebra));
    const auto lambda = parse_weight(f, g, o.lambda);
    for (std::size_t n : o.n) {
        const auto t = build_truncation(g, f, lambda, n);
        struct Target {
            std::string name;
            std::optional<AlmostRep<F>> psi;
            std::vector<std::size_t> parts;
        };
        std::vector<Target> targets;
        if (!o.rep_in.empty()) {
            std::ifstream in(o.rep_in);
            if (!in) throw parse_error("cannot open '" + o.rep_in + "'");
            targets.push_back({o.rep_in, read_rep(in, f), {}});
        } else {
            if (g.r() != 2) throw parse_error("repdist builds targets for sl2 only; pass --rep-in for " + g.name());
            std::vector<std::vector<std::size_t>> parts;
            for (const auto& p : o.partitions) parts.push_back(parse_partition(p));
            if (parts.empty()) parts = partition_battery(t.rep.dim());
            for (auto& p : parts) targets.push_back({"", std::nullopt, p});
        }
        std::vector<json> recs(targets.size());
        std::vector<bool> bad(targets.size(), false);
        parallel_for(targets.size(), [&](std::size_t i) {
            const AlmostRep<F> psi = targets[i].psi ? *targets[i].psi : direct_sum_rep(f, targets[i].parts);
            const auto r = rep_distance_certificate(t, psi);
            json rec = {{"n", n},
                        {"dim", t.rep.dim()},
                        {"target_dim", r.target_dim},
                        {"chi_lambda", r.chi_lambda},
                        {"kernel_dim", r.kernel_dim},
                        {"flex_bound", to_json(r.flex_bound)},
                        {"bound_vacuous", r.bound_vacuous},
                        {"basis_flexible", to_json(r.basis_flexible)},
                        {"verdict", verdict_name(r.verdict)},
                        {"reason", r.reason}};
            if (targets[i].psi)
                rec["target"] = targets[i].name;
            else
                rec["partition"] = targets[i].parts;
            recs[i] = rec;
            bad[i] = r.verdict == Verdict::Violated;
        });
        for (std::size_t i = 0; i < recs.size(); ++i) {
            out.records.push_back(recs[i]);
            if (bad[i]) {
                out.violated = true;
                out.diagnostic += "n=" + std::to_string(n) + ": " + recs[i].dump() + "\n";
            }
        }
    }
}

template <class F>
void verma_weyl(const F& f, const Options& o, Outcome& out) {
    ChevalleyBasis g(algebra_rank_from_name(o.algebra));
    const auto lambda = parse_weight(f, g, o.lambda);
    for (std::size_t n : o.n) {
        const auto t = build_truncation(g, f, lambda, n);
        const auto r = weyl_twist_report(t.rep, o.trials == 0 ? 3 : o.trials, o.seed);
        json samples = json::array();
        for (const auto& s : r.samples) samples.push_back({{"conjugator", s.conjugator}, {"distance", to_json(s.distance)}});
        out.records.push_back({{"n", n}, {"dim", t.rep.dim()}, {"samples", samples}, {"minimum", to_json(r.minimum)}});
    }
}

// ---- rolli ---------------------------------------------------------------

template <class F>
void rolli_defect(const F& f, const Options& o, Outcome& out) {
    const auto kind = parse_preset(o.preset);
    std::vector<json> recs(o.n.size());
    std::vector<CsvRow> rows(o.n.size());
    std::vector<std::string> diags(o.n.size());
    parallel_for(o.n.size(), [&](std::size_t i) {
        const auto tau = preset_tau(kind, o.n[i], f);
        const auto chk = check_tau(tau);
        const auto d = exact_defect(tau);
        recs[i] = {{"n", o.n[i]},
                   {"dim", tau.dim()},
                   {"defect", to_json(d.defect)},
                   {"arg", {d.arg_m, d.arg_q}},
                   {"bound", to_json(d.bound)},
                   {"tau_ok", chk.pass()},
                   {"pass", d.pass && chk.pass()}};
        rows[i] = {std::to_string(o.n[i]), std::to_string(tau.dim()), d.defect.str(), d.bound.get_str(),
                   bool_str(d.pass && chk.pass())};
        if (!d.pass) {
            diags[i] = "n=" + std::to_string(o.n[i]) + ": defect " + d.defect.str() + " > " + d.bound.get_str() +
                       " at m=" + std::to_string(d.arg_m) + ", q=" + std::to_string(d.arg_q) + "\n";
            if (tau.dim() <= 16)
                diags[i] += "tau(m) =\n" + to_text(tau(d.arg_m)) + "tau(q) =\n" + to_text(tau(d.arg_q));
        } else if (!chk.pass()) {
            diags[i] = "n=" + std::to_string(o.n[i]) + ": tau family fails its invariants\n";
        }
    });
    for (std::size_t i = 0; i < recs.size(); ++i) {
        out.records.push_back(recs[i]);
        out.csv.push_back(rows[i]);
        out.diagnostic += diags[i];
        if (recs[i]["pass"] == false) out.violated = true;
    }
}

template <class F>
void rolli_witness(const F& f, const Options& o, Outcome& out) {
    const auto kind = parse_preset(o.preset);
    for (std::size_t n : o.n) {
        const auto tau = preset_tau(kind, n, f);
        const std::size_t t = o.t ? o.t : static_cast<std::size_t>(tau.support_bound());
        const auto w = witness_word(t);
        out.records.push_back({{"n", n},
                               {"t", t},
                               {"word", format_word(w)},
                               {"length", w.length()},
                               {"value", to_json(witness_value(tau, w))}});
    }
}

template <class F>
std::vector<std::pair<Matrix<F>, Matrix<F>>> rolli_targets(const F& f, const Options& o, const TauFamily<F>& tau,
                                                          Rng& rng) {
    const std::size_t big_n = o.big_n ? o.big_n : tau.dim();
    const std::size_t trials = o.trials ? o.trials : 1;
    std::vector<std::pair<Matrix<F>, Matrix<F>>> out;
    const auto id = Matrix<F>::identity(f, big_n);
    if (o.family == "trivial") {
        out.emplace_back(id, id);
    } else if (o.family == "near") {
        if (big_n != tau.dim()) throw parse_error("family 'near' needs --big-n equal to --n");
        out.emplace_back(id, tau(1));
    } else if (o.family == "file") {
        if (o.a_file.empty() || o.b_file.empty()) throw parse_error("family 'file' needs --a-file and --b-file");
        out.emplace_back(read_matrix_file(o.a_file, f), read_matrix_file(o.b_file, f));
    } else if (o.family == "monomial") {
        for (std::size_t i = 0; i < trials; ++i) {
            auto a = random_monomial(f, rng, big_n);
            out.emplace_back(std::move(a), random_monomial(f, rng, big_n));
        }
    } else if (o.family == "conjugate") {
        for (std::size_t i = 0; i < trials; ++i) {
            const auto [s, s_inv] = random_unimodular(f, rng, big_n, 2 * big_n);
            auto a = mul(mul(s, random_signed_permutation(f, rng, big_n)), s_inv);
            auto b = mul(mul(s, random_signed_permutation(f, rng, big_n)), s_inv);
            out.emplace_back(std::move(a), std::move(b));
        }
    } else {
        throw parse_error("unknown family '" + o.family + "' (trivial, near, monomial, conjugate, file)");
    }
    return out;
}

template <class F>
void rolli_certify(const F& f, const Options& o, Outcome& out) {
    const auto kind = parse_preset(o.preset);
    Rng rng(o.seed);
    for (std::size_t n : o.n) {
        const auto tau = preset_tau(kind, n, f);
        const auto w = o.t ? witness_word(o.t) : default_witness(tau);
        const auto targets = rolli_targets(f, o, tau, rng);
        std::vector<json> recs(targets.size());
        std::vector<bool> ok(targets.size(), true);
        parallel_for(targets.size(), [&](std::size_t i) {
            const auto c = rep_distance_certificate(tau, targets[i].first, targets[i].second, w);
            recs[i] = {{"n", c.n},
                       {"big_n", c.big_n},
                       {"trial", i},
                       {"witness", to_json(c.witness)},
                       {"d_a", to_json(c.d_a)},
                       {"d_b", to_json(c.d_b)},
                       {"d_w", to_json(c.d_w)},
                       {"rho", {c.rho_a, c.rho_b, c.rho_w}},
                       {"r", {c.r_a, c.r_b}},
                       {"fixed_dim", c.fixed_dim},
                       {"eps_lower", to_json(c.eps_lower)},
                       {"delta", to_json(c.delta)},
                       {"chain_bound", to_json(c.chain_bound)},
                       {"steps",
                        {{"witness", c.step_witness},
                         {"kernel", c.step_kernel},
                         {"generators", c.step_generators},
                         {"final", c.step_final}}},
                       {"pass", c.pass()}};
            ok[i] = c.pass();
        });
        for (std::size_t i = 0; i < recs.size(); ++i) {
            out.records.push_back(recs[i]);
            if (!ok[i]) {
                out.violated = true;
                out.diagnostic += "n=" + std::to_string(n) + " trial " + std::to_string(i) + ": " + recs[i].dump() + "\n";
                if (targets[i].first.rows() <= 16)
                    out.diagnostic += "psi(a) =\n" + to_text(targets[i].first) + "psi(b) =\n" + to_text(targets[i].second);
            }
        }
    }
}

FreeWord parse_image_word(const std::string& s) { return s == "1" || s.empty() ? FreeWord() : word_reduce(s); }

template <class F>
void rolli_pullback(const F& f, const Options& o, Outcome& out) {
    const auto kind = parse_preset(o.preset);
    std::vector<FreeWord> images;
    for (const auto& s : o.images) images.push_back(parse_image_word(s));
    if (images.empty()) throw parse_error("pullback needs --images");
    const Pullback pb(images);
    Rng rng(o.seed);
    const std::size_t trials = o.trials ? o.trials : 20;
    for (std::size_t n : o.n) {
        const auto tau = preset_tau(kind, n, f);
        const auto id = Matrix<F>::identity(f, n);
        for (std::size_t i = 0; i < trials; ++i) {
            const auto gw = random_word(rng, pb.rank(), o.length);
            const auto image = pb.substitute(gw);
            const auto value = pb.evaluate(gw, tau);
            const bool consistent = value == phi_eval(image, tau);
            out.records.push_back({{"n", n},
                                   {"trial", i},
                                   {"gamma_word", format_word(gw)},
                                   {"image_word", format_word(image)},
                                   {"distance_to_identity", to_json(normalized_rank(sub(value, id)))},
                                   {"consistent", consistent}});
            if (!consistent) {
                out.violated = true;
                out.diagnostic += "pullback evaluation disagrees with substitution for " + format_word(gw) + "\n";
            }
        }
    }
    std::vector<std::string> shown;
    for (const auto& w : images) shown.push_back(format_word(w));
    out.report["summary"] = {{"images", shown}, {"surjective", pb.witnesses_surjection()}};
}

// ---- compress ------------------------------------------------------------

template <class F>
void compress_check(const F& f, const Options& o, Outcome& out) {
    const std::size_t n = single_n(o);
    if (o.k == 0 || o.k > n) throw parse_error("--k must be in [1, n]");
    const std::size_t trials = o.trials ? o.trials : 100;
    Rng rng(o.seed);
    struct Input {
        CompressionFrame<F> f1, f2;
        Matrix<F> m1, m2;
    };
    std::vector<Input> inputs;
    for (std::size_t t = 0; t < trials; ++t) {
        auto f1 = random_frame(f, rng, n, o.k);
        auto f2 = random_frame(f, rng, n, o.k);
        auto m1 = random_matrix_of_rank(f, rng, n, n, rng.index(n + 1));
        auto m2 = random_matrix(f, rng, n, n);
        inputs.push_back({std::move(f1), std::move(f2), std::move(m1), std::move(m2)});
    }
    std::vector<std::vector<InequalityReport>> results(trials);
    parallel_for(trials, [&](std::size_t t) {
        const auto& in = inputs[t];
        results[t].push_back(verify_rank_lower(in.m1, in.f1));
        results[t].push_back(verify_mult_defect(in.m1, in.m2, in.f1));
        for (auto& c : align_compressions(in.f1, in.f2, {in.m1, in.m2}).checks) {
            c.name = "alignment";
            results[t].push_back(c);
        }
    });
    std::size_t passed = 0;
    std::map<std::string, std::size_t> failures;
    for (std::size_t t = 0; t < trials; ++t) {
        bool all = true;
        for (const auto& r : results[t]) {
            out.records.push_back(
                {{"trial", t}, {"inequality", r.name}, {"n", r.n}, {"k", r.k}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}});
            if (!r.pass) {
                all = false;
                ++failures[r.name];
                out.diagnostic += "trial " + std::to_string(t) + ": " + r.name + " lhs=" + std::to_string(r.lhs) +
                                  " rhs=" + std::to_string(r.rhs) + "\nM1 =\n" + to_text(inputs[t].m1);
            }
        }
        passed += all;
    }
    out.violated = passed != trials;
    out.report["summary"] = {{"trials", trials}, {"trials_passed", passed}, {"failures", failures}};
}

// ---- field ---------------------------------------------------------------

template <class F>
void field_selftest(const F& f, const Options& o, Outcome& out) {
    const std::size_t trials = o.trials ? o.trials : 50;
    Rng rng(o.seed);
    std::map<std::string, bool> ok = {{"field_axioms", true}, {"format_parse", true}, {"rank_agreement", true},
                                      {"inverse", true},      {"text_round_trip", true}};
    for (std::size_t t = 0; t < trials; ++t) {
        const auto a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
        ok["field_axioms"] = ok["field_axioms"] && f.eq(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))) &&
                             f.eq(f.add(a, f.neg(a)), f.zero()) &&
                             (f.is_zero(a) || f.eq(f.mul(a, f.inv(a)), f.one()));
        ok["format_parse"] = ok["format_parse"] && f.eq(f.parse(f.format(a)), a);
        const std::size_t rows = 1 + rng.index(6), cols = 1 + rng.index(6);
        const auto m = random_matrix_of_rank(f, rng, rows, cols, rng.index(std::min(rows, cols) + 1));
        ok["rank_agreement"] = ok["rank_agreement"] && rank(m) == rank_gauss_jordan(m) && rank(m) == rank(transpose(m));
        const auto inv_src = random_invertible(f, rng, 1 + rng.index(5));
        ok["inverse"] = ok["inverse"] && mul(inv_src, inverse(inv_src)) == Matrix<F>::identity(f, inv_src.rows());
        std::stringstream ss;
        write_text(ss, m);
        ok["text_round_trip"] = ok["text_round_trip"] && read_text(ss, f) == m;
    }
    for (const auto& [name, pass] : ok) {
        out.records.push_back({{"check", name}, {"trials", trials}, {"pass", pass}});
        if (!pass) {
            out.violated = true;
            out.diagnostic += "field " + f.spec().tag() + ": " + name + " failed\n";
        }
    }
    out.report["summary"] = {{"field", f.spec().tag()}, {"characteristic", f.spec().characteristic()}};
}

template <class F>
void field_rank(const F& f, const Options& o, Outcome& out) {
    if (o.matrix.empty()) throw parse_error("rank needs --matrix");
    const auto m = read_matrix_file(o.matrix, f);
    out.records.push_back({{"rows", m.rows()}, {"cols", m.cols()}, {"rank", rank(m)}});
}

// ---- dispatch ------------------------------------------------------------

using Runner = std::function<void(const Options&, Outcome&)>;

#define RSL_RUNNER(fn)                                                                      \
    [](const Options& o, Outcome& out) {                                                    \
        with_field(o.field, [&](const auto& f) { fn(f, o, out); });                         \
    }

json config_echo(CLI::App* leaf) {
    static const std::set<std::string> skip = {"help", "out", "csv", "format", "no-timing", "rep-out"};
    json cfg = json::object();
    for (const CLI::Option* opt : leaf->get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || skip.count(name)) continue;
        if (opt->get_expected_min() == 0) {
            cfg[name] = opt->count() > 0;
            continue;
        }
        std::vector<std::string> vals = opt->results();
        if (vals.empty()) {
            if (opt->get_default_str().empty()) continue;
            cfg[name] = opt->get_default_str();
            continue;
        }
        std::string joined;
        for (std::size_t i = 0; i < vals.size(); ++i) joined += (i ? "," : "") + vals[i];
        cfg[name] = joined;
    }
    return cfg;
}

Outcome execute(const std::vector<std::string>& args);

void run_sweep(const Options& o, Outcome& out) {
    std::ifstream in(o.config);
    if (!in) throw parse_error("cannot open sweep config '" + o.config + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad sweep config: ") + e.what());
    }
    if (!cfg.contains("runs") || !cfg["runs"].is_array()) throw parse_error("sweep config needs a \"runs\" array");
    for (const auto& run : cfg["runs"]) {
        std::vector<std::string> args = split(run.at("command").get<std::string>(), ' ');
        const json run_args = run.value("args", json::object());
        for (const auto& [key, value] : run_args.items()) {
            if (value.is_boolean()) {
                if (value.get<bool>()) args.push_back("--" + key);
                continue;
            }
            args.push_back("--" + key);
            if (value.is_array()) {
                std::string joined;
                for (std::size_t i = 0; i < value.size(); ++i)
                    joined += (i ? "," : "") + (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
                args.push_back(joined);
            } else {
                args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
            }
        }
        if (o.no_timing) args.push_back("--no-timing");
        Outcome sub = execute(args);
        sub.report["records"] = sub.records;
        out.records.push_back(sub.report);
        out.violated = out.violated || sub.violated;
        out.diagnostic += sub.diagnostic;
    }
}

struct UsageExit {
    int code;
};

Outcome execute(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"Exact checks for almost-representations in the normalized rank metric", "rsl_cli"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    std::map<CLI::App*, std::pair<std::string, Runner>> leaves;
    auto add_output = [&](CLI::App* s) {
        s->add_option("--format", o.format, "json, jsonl or csv")->check(CLI::IsMember({"json", "jsonl", "csv"}));
        s->add_option("--out", o.out, "write the report here instead of stdout");
        s->add_option("--csv", o.csv, "also write the CSV table here");
        s->add_flag("--no-timing", o.no_timing, "omit the timing field");
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, Runner r) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->add_option("--field", o.field, "rational, gaussian or gfP");
        add_output(s);
        leaves[s] = {parent->get_name() + " " + name, std::move(r)};
        return s;
    };
    auto n_list = [&](CLI::App* s) { s->add_option("--n", o.n, "truncation degrees or dimensions")->delimiter(',')->required(); };
    auto weight = [&](CLI::App* s) {
        s->add_option("--algebra", o.algebra, "sl2, sl3, ...");
        s->add_option("--lambda", o.lambda, "weight p/q[,p/q...] in fundamental coordinates");
    };

    CLI::App* verma = app.add_subcommand("verma", "truncated Verma modules");
    verma->require_subcommand(1);
    auto* vb = leaf(verma, "build", "build one truncation and optionally save it", RSL_RUNNER(verma_build));
    weight(vb);
    n_list(vb);
    vb->add_option("--rep-out", o.rep_out, "save the almost-representation to this file");
    vb->add_flag("--structure", o.structure, "also run the highest-weight structure check");
    auto* vd = leaf(verma, "defect", "exact defect against 2m^2/n", RSL_RUNNER(verma_defect));
    weight(vd);
    n_list(vd);
    vd->add_flag("--structure", o.structure, "also run the highest-weight structure check");
    auto* vc = leaf(verma, "casimir", "near-scalar check of the Casimir", RSL_RUNNER(verma_casimir));
    weight(vc);
    n_list(vc);
    auto* vs = leaf(verma, "separate", "separation certificate for two weights", RSL_RUNNER(verma_separate));
    weight(vs);
    n_list(vs);
    vs->add_option("--mu", o.mu, "second weight");
    auto* vr = leaf(verma, "repdist", "distance certificate to true representations", RSL_RUNNER(verma_repdist));
    weight(vr);
    n_list(vr);
    vr->add_option("--partition", o.partitions, "highest weights of irreducible summands, e.g. 3,2,0 (repeatable)");
    vr->add_option("--rep-in", o.rep_in, "read the target representation from this file");
    auto* vw = leaf(verma, "weyl", "distances to conjugates of the Weyl twist", RSL_RUNNER(verma_weyl));
    weight(vw);
    n_list(vw);
    vw->add_option("--trials", o.trials, "random conjugators (default 3)");
    vw->add_option("--seed", o.seed);

    CLI::App* rolli = app.add_subcommand("rolli", "almost-representations of the free group");
    rolli->require_subcommand(1);
    auto preset = [&](CLI::App* s) { s->add_option("--preset", o.preset, "diag, transposition or transvection"); };
    auto* rd = leaf(rolli, "defect", "exact defect against 3/n", RSL_RUNNER(rolli_defect));
    preset(rd);
    n_list(rd);
    auto* rw = leaf(rolli, "witness", "witness word and its distance from the identity", RSL_RUNNER(rolli_witness));
    preset(rw);
    n_list(rw);
    rw->add_option("--t", o.t, "witness parameter (default: support bound of the preset)");
    auto* rc = leaf(rolli, "certify", "chain certificate against true representations", RSL_RUNNER(rolli_certify));
    preset(rc);
    n_list(rc);
    rc->add_option("--family", o.family, "trivial, near, monomial, conjugate or file");
    rc->add_option("--big-n", o.big_n, "dimension of the target representation (default n)");
    rc->add_option("--trials", o.trials, "targets drawn for random families (default 1)");
    rc->add_option("--seed", o.seed);
    rc->add_option("--t", o.t, "witness parameter");
    rc->add_option("--a-file", o.a_file, "psi(a) as a matrix text file");
    rc->add_option("--b-file", o.b_file, "psi(b) as a matrix text file");
    auto* rp = leaf(rolli, "pullback", "evaluate through a map from a larger free group", RSL_RUNNER(rolli_pullback));
    preset(rp);
    n_list(rp);
    rp->add_option("--images", o.images, "image word of each generator, letters aAbB, 1 for the identity")
        ->delimiter(',')
        ->required();
    rp->add_option("--trials", o.trials, "random words (default 20)");
    rp->add_option("--length", o.length, "syllables per random word");
    rp->add_option("--seed", o.seed);

    CLI::App* comp = app.add_subcommand("compress", "compression inequalities");
    comp->require_subcommand(1);
    auto* cc = leaf(comp, "check", "randomized check of the three inequalities", RSL_RUNNER(compress_check));
    cc->add_option("--n", o.n, "ambient dimension")->required();
    cc->add_option("--k", o.k, "subspace dimension")->required();
    cc->add_option("--trials", o.trials, "trials (default 100)");
    cc->add_option("--seed", o.seed);

    CLI::App* fld = app.add_subcommand("field", "exact field utilities");
    fld->require_subcommand(1);
    auto* fs = leaf(fld, "selftest", "randomized consistency checks", RSL_RUNNER(field_selftest));
    fs->add_option("--trials", o.trials, "trials (default 50)");
    fs->add_option("--seed", o.seed);
    auto* fr = leaf(fld, "rank", "rank of a matrix text file", RSL_RUNNER(field_rank));
    fr->add_option("--matrix", o.matrix, "matrix text file")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "run a list of commands from a JSON config");
    sweep->add_option("--config", o.config, "JSON file {\"runs\": [{\"command\": ..., \"args\": {...}}]}")->required();
    add_output(sweep);
    leaves[sweep] = {"sweep", run_sweep};

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageExit{app.exit(e)};
    }

    CLI::App* chosen = nullptr;
    for (auto& [s, info] : leaves)
        if (s->parsed()) chosen = s;
    if (!chosen) throw UsageExit{2};

    Outcome out;
    // compress check prints one line per inequality unless asked otherwise
    if (chosen == cc && chosen->get_option("--format")->count() == 0) o.format = "jsonl";
    out.format = o.format;
    out.out = o.out;
    out.csv_path = o.csv;
    const auto start = std::chrono::steady_clock::now();
    leaves[chosen].second(o, out);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    out.report["command"] = leaves[chosen].first;
    out.report["config"] = config_echo(chosen);
    out.report["pass"] = !out.violated;
    if (!out.report.contains("summary")) out.report["summary"] = json::object();
    if (!o.no_timing) out.report["timing"] = {{"elapsed_ms", static_cast<long>(ms)}, {"threads", thread_count(1 << 20)}};
    return out;
}

std::string csv_text(const std::vector<CsvRow>& rows) {
    std::string s = "n,dim,defect,bound,pass\n";
    for (const auto& r : rows) s += r.n + "," + r.dim + "," + r.defect + "," + r.bound + "," + r.pass + "\n";
    return s;
}

void emit(const Outcome& out) {
    std::string text;
    if (out.format == "csv") {
        if (out.csv.empty()) throw parse_error("this command has no CSV table");
        text = csv_text(out.csv);
    } else if (out.format == "jsonl") {
        for (const auto& r : out.records) text += r.dump() + "\n";
        text += out.report.dump() + "\n";
    } else {
        json full = out.report;
        full["records"] = out.records;
        text = full.dump(2) + "\n";
    }
    if (out.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out.out);
        if (!os) throw parse_error("cannot write '" + out.out + "'");
        os << text;
    }
    if (!out.csv_path.empty()) {
        std::ofstream os(out.csv_path);
        if (!os) throw parse_error("cannot write '" + out.csv_path + "'");
        os << csv_text(out.csv);
    }
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        Outcome out = execute(args);
        emit(out);
        if (out.violated) {
            std::cerr << "bound violation\n" << out.diagnostic;
            return 3;
        }
        return 0;
    } catch (const UsageExit& u) {
        return u.code == 0 ? 0 : 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const not_prime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dimension_mismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const singular_matrix& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
