#include "paratuck2/cli.hpp"

int main(int argc, char** argv) { return paratuck2::run_cli(argc, argv); }
