#include <iostream>

#include "vmeas/cli/commands.hpp"

int main(int argc, char** argv) { return vmeas::cli::main_entry(argc, argv, std::cout, std::cerr); }
