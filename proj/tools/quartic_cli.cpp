#include "quartic/cli.hpp"

int main(int argc, char** argv) {
    return quartic::run(argc - 1, argv + 1);
}
