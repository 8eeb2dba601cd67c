/**
 * @file prepkit.cpp
 * @brief Entry point of the prepkit command-line tool.
 */

#include "prepkit/cli.hpp"

int main(int argc, char** argv) { return prepkit::run_cli(argc, argv); }
