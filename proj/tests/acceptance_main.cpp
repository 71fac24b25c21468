#include <cstdlib>
#include <iostream>

#include "uur/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 424242;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    const auto results = uur::run_acceptance(std::cout, seed);
    return uur::all_passed(results) ? 0 : 1;
}
