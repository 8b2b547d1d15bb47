#pragma once

namespace hiz {

// Entry point for the hiz command line tool.
// Exit codes: 0 success, 1 verification failure, 2 invalid arguments.
int run_cli(int argc, char** argv);

} // namespace hiz
