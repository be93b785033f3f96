#include <iostream>

#include <lacunary/cli.hpp>

int main(int argc, char **argv)
{
    return lacunary::cli::run(argc, argv, std::cout, std::cerr);
}
