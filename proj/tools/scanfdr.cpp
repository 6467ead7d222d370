#include <iostream>

#include "scanfdr/cli.hpp"

int main(int argc, char** argv) {
    return scanfdr::cli::run(argc, argv, std::cout, std::cerr);
}
