#include <tcpair/cli.hpp>

#include <iostream>

auto main(int argc, char ** argv) -> int
{
    return tcpair::cli::run(argc, argv, std::cout, std::cerr);
}
