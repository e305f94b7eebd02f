#include "commands.hpp"

int main(int argc, char** argv) {
    return loadstab::cli::run(argc, argv);
}
