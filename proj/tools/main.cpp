#include <string>
#include <vector>

#include "opschur/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return opschur::cli::run(args);
}
