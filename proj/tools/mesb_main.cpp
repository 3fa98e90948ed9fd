#include "mesb/cli.hpp"

int main(int argc, const char* argv[]) {
    return mesb::run_cli(argc, argv);
}
