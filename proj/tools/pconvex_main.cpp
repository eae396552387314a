#include <string>
#include <vector>

#include "pconvex/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return pconvex::dispatch(args).exit_code;
}
