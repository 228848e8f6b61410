// The invariant polygon family: A_n and B_n are contractions of the polygon
// norm, A_n^n B_n has spectral radius 1, and no other class reaches it.
#include "smplab/constructions.hpp"

#include <iomanip>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace smplab;

    const int max_n = argc > 1 ? std::stoi(argv[1]) : 4;
    std::cout << "c = " << std::setprecision(12) << lambert_c() << "\n\n";
    std::cout << " n  |A|_S       |B|_S       rho(A^n B)   gap to runner-up\n";
    std::cout << std::setprecision(9) << std::fixed;
    for (int n = 1; n <= max_n; ++n) {
        const ExampleVerification v = verify_example(n, static_cast<std::size_t>(2 * n + 4));
        std::cout << std::setw(2) << n << "  " << v.norm_a << "  " << v.norm_b << "  " << v.rho_product << "  "
                  << v.gap << (v.passes ? "" : "  FAILED") << '\n';
    }
}
