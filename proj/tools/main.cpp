#include "billiards/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return billiards::cli::run(argc, argv, std::cout, std::cerr); }
