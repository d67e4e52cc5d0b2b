#include <iostream>

#include "vortexq/cli/run.hpp"

int main(int argc, char** argv) { return vortexq::cli::main_entry(argc, argv, std::cout, std::cerr); }
