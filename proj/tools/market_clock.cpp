#include <iostream>

#include "market_clock/cli.hpp"

int main(int argc, char** argv) { return mclock::cli::run(argc, argv, std::cout, std::cerr); }
