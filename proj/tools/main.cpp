#include "commands.hpp"

int main(int argc, char** argv) { return boolsketch::cli::run(argc, argv); }
