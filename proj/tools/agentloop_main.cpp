#include <string>
#include <vector>

#include "agentloop/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return agentloop::cli::main_impl(args);
}
