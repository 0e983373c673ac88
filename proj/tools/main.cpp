#include "gramframe_cli/commands.hpp"

int main(int argc, char** argv) { return gramframe::cli::run_cli(argc, argv); }
