// Builds the degree-n truncation of the sl_2 Verma module of weight 1/2 and
// prints its exact defect next to 2/n for a few n.

#include <iostream>

#include "rsl/rsl.hpp"

int main() {
    const rsl::RationalField q;
    const rsl::ChevalleyBasis sl2(2);
    for (std::size_t n : {4, 8, 16, 32}) {
        const auto t = rsl::build_truncation(sl2, q, {mpq_class(1, 2)}, n);
        const auto r = rsl::certify_defect(t);
        std::cout << "n=" << n << " dim=" << t.rep.dim() << " defect=" << r.defect.pointwise.str()
                  << " bound=" << r.bound.get_str() << (r.pass ? " ok" : " VIOLATED") << "\n";
    }
}
