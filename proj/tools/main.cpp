#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "secvis/cli.hpp"

int main(int argc, char** argv) {
  // Broken pipes surface as transport errors instead of killing the process.
  std::signal(SIGPIPE, SIG_IGN);
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return secvis::cli::run(args, std::cin, std::cout, std::cerr);
}
