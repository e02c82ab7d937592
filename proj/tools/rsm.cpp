#include "rsm/cli.hpp"

int main(int argc, char** argv) { return rsm::cli::dispatch(argc, argv); }
