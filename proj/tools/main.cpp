#include "platoon/cli.hpp"

int main(int argc, char** argv) { return platoon::cli_main(argc, argv); }
