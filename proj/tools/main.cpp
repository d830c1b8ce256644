#include <iostream>

#include "laver/cli.hpp"

int main(int argc, char** argv) {
    return laver::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
