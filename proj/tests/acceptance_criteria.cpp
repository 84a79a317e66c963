#include "quartic/acceptance.hpp"

#include <iostream>

int main() {
    return quartic::run_acceptance(std::cout) == 0 ? 0 : 1;
}
