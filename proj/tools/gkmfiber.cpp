#include "gkmfiber/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return gkmfiber::run_command_line(argc, argv, std::cout, std::cerr);
}
