#include <iostream>

#include "calabi/cli.hpp"

int main(int argc, char** argv) { return calabi::cli::main_entry(argc, argv, std::cout, std::cerr); }
