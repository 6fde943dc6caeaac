#include <iostream>

#include "hlq/cli.hpp"

int main(int argc, char** argv) { return hlq::dispatch(argc, argv, std::cout, std::cerr); }
