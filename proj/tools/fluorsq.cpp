#include "fluorsq/cli/runner.hpp"

int main(int argc, char** argv) { return fluorsq::cli::main_with_args(argc, argv); }
