#include "strucnet/cli.hpp"

#include <iostream>
#include <iterator>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string stdin_text;
  for (const auto& a : args)
    if (a == "-") {
      stdin_text.assign(std::istreambuf_iterator<char>(std::cin),
                        std::istreambuf_iterator<char>());
      break;
    }
  return strucnet::run_cli(args, std::cout, std::cerr, stdin_text);
}
