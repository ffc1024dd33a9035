#include <iostream>

#include "emlab/harness.hpp"

int main(int argc, char** argv) {
    return emlab::cli_main(argc, argv, std::cout, std::cerr);
}
