#include "sacns/commands.hpp"

int main(int argc, char** argv) { return sacns::cli_main(argc, argv); }
