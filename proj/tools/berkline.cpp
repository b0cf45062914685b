#include <iostream>

#include "berkline/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto out = berkline::cli::run(args);
  if (!out.text.empty()) {
    std::cout << out.text;
    if (out.text.back() != '\n') std::cout << '\n';
  } else if (out.exit_code == 0) {
    std::cout << out.document.dump(2) << '\n';
  } else {
    std::cerr << out.document.dump(2) << '\n';
  }
  return out.exit_code;
}
