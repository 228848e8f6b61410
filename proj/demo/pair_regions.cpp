// Classify a few pairs and print their regions and SMP candidates.
#include "smplab/jsr.hpp"
#include "smplab/regions.hpp"

#include <iomanip>
#include <iostream>

int main()
{
    using namespace smplab;

    const struct {
        const char* label;
        MatrixPair pair;
    } cases[] = {
        {"crossing axes", {Mat2{2.0, 0.0, 0.0, 0.5}, Mat2{1.25, 0.75, 0.75, 1.25}}},
        {"negative determinants, crossing", {Mat2{1.0, 2.0, 1.0, -1.0}, Mat2{0.0, 1.0, 1.0, 0.5}}},
        {"mixed determinants", {Mat2{1.0, 1.0, 0.0, 1.0}, Mat2{0.0, 1.0, 1.0, 0.0}}},
        {"co-parallel", {Mat2{2.6180339887498949, 0.0, 0.0, 0.3819660112501051},
                         Mat2{3.0652475842498528, 1.0, -1.2, -0.0652475842498528}}},
    };

    std::cout << std::setprecision(10);
    for (const auto& c : cases) {
        const RegionFlags f = classify(c.pair);
        const SmpCandidate smp = certify(c.pair);
        std::cout << c.label << "\n"
                  << "  cross=" << to_string(f.in_cross) << " mix=" << to_string(f.in_mix)
                  << " neg=" << to_string(f.in_neg) << " copar=" << to_string(f.in_copar) << "\n"
                  << "  smp " << smp.word << " value " << smp.value << " (" << smp.certificate
                  << (smp.certified ? ", certified" : "") << ")\n";
    }
}
