#include <iostream>

#include "degenjc/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace degenjc::cli;
  try {
    std::string help;
    const auto config = parse_command_line(argc, argv, &help);
    if (!config) {
      std::cout << help;
      return kExitOk;
    }
    return execute(*config, std::cout, std::cerr);
  } catch (const degenjc::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameter;
  }
}
