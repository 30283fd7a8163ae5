#include <vector>

#include "fgarch/cli.hpp"

int main(int argc, char** argv) {
    return fgarch::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
