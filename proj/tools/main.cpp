#include "cli.hpp"

int main(int argc, char** argv) { return pscat::cli::run(argc, argv); }
