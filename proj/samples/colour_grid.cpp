// Colours the full strong product of a random 2-tree with a path, checks the
// result and prints it as DOT.

#include <iostream>

#include "oddprod/oddprod.hpp"

int main() {
    using namespace oddprod;

    const auto host = random_t_tree(2, 6, 42);
    const auto g = full_product(host, secondary_factor::path(4));
    const auto [phi, stats] = colour_ttree_path(g);

    const bool proper = verify_proper(g, phi).ok();
    const bool odd = verify_odd(g, phi).report.ok();
    std::cerr << "n=" << g.n() << " m=" << g.m() << " colours used " << stats.colours_used << " of " << phi.palette
              << (proper && odd ? " (proper, odd)" : " (VERIFICATION FAILED)") << "\n";
    std::cout << export_dot(g, &phi);
    return proper && odd ? 0 : 1;
}
