#include "isoc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return isoc::cli::runCli({argv + 1, argv + argc}, std::cout, std::cerr);
}
