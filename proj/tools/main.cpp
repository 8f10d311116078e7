#include <iostream>

#include "ffhalton/cli.hpp"

int main(int argc, char** argv) {
    return ffhalton::cli::run(argc, argv, std::cout, std::cerr);
}
