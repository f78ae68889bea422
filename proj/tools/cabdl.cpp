#include "cabdl/cli/cli.hpp"

int main(int argc, char ** argv) { return cabdl::run_cli(argc, argv); }
