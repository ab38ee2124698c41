#include "plcbench/cli/commands.hpp"

int main(int argc, char** argv) {
    return plcbench::cli::run(argc, argv);
}
