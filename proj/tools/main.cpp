#include "qipwsd/cli.hpp"

int main(int argc, char** argv) {
    return qipwsd::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
