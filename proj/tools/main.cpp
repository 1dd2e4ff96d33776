#include "fairdiv/cli.hpp"

int main(int argc, char** argv) { return fairdiv::run_cli(argc, argv); }
