#include "pagame/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return pagame::cli::run_command(args, std::cout, std::cerr);
}
