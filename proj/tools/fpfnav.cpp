#include <string>
#include <vector>

#include "fpf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fpf::run_cli(std::move(args));
}
