#include <iostream>

#include "ahs/experiments.hpp"

int main(int argc, char** argv) {
    return ahs::run_cli(argc, argv, std::cout, std::cerr);
}
