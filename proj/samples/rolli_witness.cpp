// The diagonal-involution family over Q: its defect is 3/n while the witness
// word is sent to -I, and every true representation tried stays far away.

#include <iostream>

#include "rsl/rsl.hpp"

int main() {
    const rsl::RationalField q;
    const std::size_t n = 12;
    const auto tau = rsl::preset_tau(rsl::TauPreset::DiagInvolution, n, q);
    const auto d = rsl::exact_defect(tau);
    const auto w = rsl::default_witness(tau);
    std::cout << "defect " << d.defect.str() << " (bound " << d.bound.get_str() << ")\n";
    std::cout << "witness " << rsl::format_word(w) << "\n";
    std::cout << "distance of phi(w) from I: " << rsl::witness_value(tau, w).str() << "\n";

    rsl::Rng rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        const auto a = rsl::random_monomial(q, rng, n), b = rsl::random_monomial(q, rng, n);
        const auto c = rsl::rep_distance_certificate(tau, a, b);
        std::cout << "psi #" << trial << ": distance >= " << c.eps_lower.str() << ", chain bound "
                  << c.chain_bound.get_str() << (c.pass() ? " ok" : " FAILED") << "\n";
    }
}
