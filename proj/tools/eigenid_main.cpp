#include <iostream>

#include "eigenid/cli.hpp"

int main(int argc, char** argv) {
    return eigenid::run_cli(argc, argv, std::cout, std::cerr);
}
