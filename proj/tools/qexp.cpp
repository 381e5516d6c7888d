// qexp: Pade-based irrationality-measure certificates for E_q(t).

#include <iostream>
#include <string>
#include <vector>

#include "qexp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  qexp::CliResult res = qexp::run_cli(args);
  std::cout << res.output;
  return res.exit_code;
}
