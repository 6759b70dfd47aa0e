#include <iostream>

#include "qwreath/cli.hpp"

int main(int argc, char** argv)
{
    return qwreath::run(argc, argv, std::cout, std::cerr);
}
