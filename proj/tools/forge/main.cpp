#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  forge::cli::Environment env;
  if (const char* bank = std::getenv("FORGE_ALGOBANK")) env.algobank = bank;
  return forge::cli::run({argv + 1, argv + argc}, std::cout, std::cerr, env);
}
