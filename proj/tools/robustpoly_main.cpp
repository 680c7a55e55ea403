#include <string>
#include <vector>

#include "robustpoly/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return robustpoly::cli::run_cli(args);
}
