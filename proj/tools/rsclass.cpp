#include <iostream>

#include "rsclass/cli.hpp"

int main(int argc, char** argv) { return rsclass::cli::run(argc, argv, std::cout, std::cerr); }
