// syncsim: command-line driver for the synchronization model.
//
//   syncsim oracle-check --config model.json
//   syncsim simulate     --config run.json --replicas 2000 --out result.csv
//   syncsim analytic     --config run.json --format json
//   syncsim phase-sweep  --config sweep.json --threads 4
//
// Exit status: 0 success, 1 a statistical or oracle check failed,
// 2 invalid configuration or enumeration guard exceeded.

#include <iostream>
#include <string>
#include <vector>

#include "syncsim/cli/app.hpp"

int main(int argc, char** argv) {
  return syncsim::cli::run_app(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
