#include "cfi/cli.hpp"

int main(int argc, char** argv) { return cfi::run_cli(argc, argv); }
