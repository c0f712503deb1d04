#include "etfsim/scenario_io.hpp"

int main(int argc, char** argv) { return etfsim::cli_dispatch(argc, argv); }
