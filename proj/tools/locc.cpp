#include <iostream>

#include "loclang/cli.hpp"

int main(int argc, char** argv) {
    return loclang::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
