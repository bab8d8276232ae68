// SPDX-License-Identifier: MIT
// Walks through the library on the unit segment and the three-ray star.
#include "netloc/netloc.hpp"

#include <iostream>

using namespace netloc;

int main() {
    Network seg = make_segment();

    // Two shops in the middle: nobody can do better by moving.
    Profile middle{point_at(seg, 0, ratio(1, 2)), point_at(seg, 0, ratio(1, 2))};
    std::cout << "two shops at 1/2: equilibrium = " << is_nash(seg, middle).is_nash << "\n";

    // Three shops never settle on a segment; the verifier names a move.
    Profile three{point_at(seg, 0, ratio(1, 4)), point_at(seg, 0, ratio(1, 2)), point_at(seg, 0, ratio(3, 4))};
    NashCertificate cert = is_nash(seg, three);
    if (cert.counterexample)
        std::cout << "three shops: player " << cert.counterexample->player << " gains "
                  << to_string(cert.counterexample->gain) << " by moving\n";

    // Large enough games always have the constructed equilibrium.
    Network star = make_star(3);
    std::size_t n = n_bar(star).get_ui();
    ConstructionPlan plan = build_equilibrium(star, n);
    std::cout << "star, n = " << n << ": xi = " << to_string(plan.xi)
              << ", cost = " << to_string(social_cost(star, plan.profile))
              << ", verified = " << is_nash(star, plan.profile).is_nash << "\n";
    std::cout << "cost bound L^2/(2n) = " << to_string(eq_cost_upper_bound(star, n))
              << ", phi(n) = " << to_string(phi(star, n)) << "\n";
}
