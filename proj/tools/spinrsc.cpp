#include <iostream>

#include "spinrsc/cli.hpp"

int main(int argc, char** argv) { return spinrsc::cli::run(argc, argv, std::cout, std::cerr); }
