#include <string>
#include <vector>

#include "platecell/run.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return platecell::run_command(args);
}
