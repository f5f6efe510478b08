#include <iostream>
#include <string>
#include <vector>

#include "fixfree/cli.hpp"

int main(int argc, char** argv) {
    return fixfree::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
