#include <string>
#include <vector>

#include "starphase/cli.hpp"

int main(int argc, char** argv) {
  return starphase::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
