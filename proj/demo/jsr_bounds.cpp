// Three-member bounds per length for a random pair.
#include "smplab/jsr.hpp"
#include "smplab/regions.hpp"

#include <iomanip>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace smplab;

    const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 7;
    PairSampler sampler(seed, 0, SampleDistribution::Normal);
    const MatrixPair pair = sampler.pair();

    const BoundsReport r = brute_force(pair, 14);
    std::cout << std::setprecision(8) << std::fixed;
    std::cout << "length  best word         lower       upper\n";
    for (const LengthRow& row : r.per_length) {
        std::cout << std::setw(6) << row.length << "  " << std::setw(16) << std::left << row.best_word.str()
                  << std::right << "  " << row.best_root << "  " << row.max_norm_root << '\n';
    }
    std::cout << "jsr in [" << r.lower << ", " << r.upper << "], best class " << r.best_word << '\n';
}
