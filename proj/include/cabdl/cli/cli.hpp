#pragma once

namespace cabdl {

// Entry point of the cabdl command-line driver; returns the process exit
// code.
int run_cli(int argc, char ** argv);

}  // namespace cabdl
