#pragma once

// JSON forms of exact values, and the AlmostRep file format: one line of JSON
// header followed by one matrix text block per basis element, in basis order.

#include <gmpxx.h>

#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <string>

#include "rsl/errors.hpp"
#include "rsl/field.hpp"
#include "rsl/liealg.hpp"
#include "rsl/matrix.hpp"
#include "rsl/rankmetric.hpp"

namespace rsl {

using nlohmann::json;

inline json to_json(const RankDistance& d) {
    return {{"num", d.numerator}, {"den", d.denominator}, {"value", d.str()}};
}

inline json to_json(const mpq_class& q) { return q.get_str(); }

inline json to_json(const MapDistance& d) {
    return {{"basis_max", to_json(d.basis_max)}, {"argmax", d.argmax}, {"uniform_bound", to_json(d.uniform_bound)}};
}

inline json to_json(const DefectReport& d) {
    return {{"pointwise", to_json(d.pointwise)},
            {"pair", {d.arg_i, d.arg_j}},
            {"uniform_bound", to_json(d.uniform_bound)}};
}

inline std::size_t algebra_rank_from_name(const std::string& name) {
    if (name.size() < 3 || name.compare(0, 2, "sl") != 0) throw parse_error("unknown algebra '" + name + "'");
    try {
        const auto r = std::stoul(name.substr(2));
        if (r < 2) throw parse_error("sl_r needs r >= 2");
        return r;
    } catch (const std::logic_error&) {
        throw parse_error("unknown algebra '" + name + "'");
    }
}

template <class F>
json rep_header(const AlmostRep<F>& phi) {
    json h = {{"algebra", phi.algebra().name()},
              {"field", phi.field().spec().tag()},
              {"dim", phi.dim()},
              {"construction", phi.metadata().construction}};
    if (!phi.metadata().lambda.empty()) h["lambda"] = phi.metadata().lambda;
    if (phi.metadata().n) h["n"] = *phi.metadata().n;
    return h;
}

template <class F>
void write_rep(std::ostream& os, const AlmostRep<F>& phi) {
    os << rep_header(phi).dump() << '\n';
    for (const auto& m : phi.images()) write_text(os, m);
}

template <class F>
AlmostRep<F> read_rep(std::istream& is, const F& f) {
    std::string line;
    if (!std::getline(is, line)) throw parse_error("missing AlmostRep header");
    json h;
    try {
        h = json::parse(line);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad AlmostRep header: ") + e.what());
    }
    if (h.value("field", "") != f.spec().tag()) throw parse_error("AlmostRep field does not match");
    ChevalleyBasis g(algebra_rank_from_name(h.at("algebra").get<std::string>()));
    std::vector<Matrix<F>> images;
    for (std::size_t k = 0; k < g.dim(); ++k) images.push_back(read_text(is, f));
    RepMetadata meta;
    meta.construction = h.value("construction", "");
    if (h.contains("lambda")) meta.lambda = h["lambda"].get<std::vector<std::string>>();
    if (h.contains("n")) meta.n = h["n"].get<std::size_t>();
    AlmostRep<F> phi(g, f, std::move(images), meta);
    if (phi.dim() != h.at("dim").get<std::size_t>()) throw parse_error("AlmostRep dim does not match header");
    return phi;
}

} // namespace rsl
