#include <iostream>

#include "cperiod/cli.hpp"

int main(int argc, char** argv) { return cperiod::cli::main_entry(argc, argv, std::cout, std::cerr); }
