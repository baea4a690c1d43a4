#include <iostream>

#include "knads/cli.hpp"

int main(int argc, char** argv) { return knads::cli::main_entry(argc, argv, std::cout, std::cerr); }
