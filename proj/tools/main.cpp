#include "cli.hpp"

int main(int argc, char** argv) { return monobox::cli_dispatch(argc, argv); }
