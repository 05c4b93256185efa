#include <iostream>

#include "urllc/cli/commands.hpp"

int main(int argc, char** argv) { return urllc::cli::run(argc, argv, std::cout, std::cerr); }
