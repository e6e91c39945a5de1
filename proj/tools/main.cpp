#include <string>
#include <vector>

#include "cisnim/cli.hpp"

int main(int argc, char** argv) {
  return cisnim::run(std::vector<std::string>(argv + 1, argv + argc));
}
