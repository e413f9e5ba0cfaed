#include <iostream>

#include "jrfl/cli.hpp"

int main(int argc, char** argv) {
    return jrfl::cli::run_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
