#include "vcreg/cli.hpp"

int main(int argc, char** argv) { return vcreg::cli::run(argc, argv); }
